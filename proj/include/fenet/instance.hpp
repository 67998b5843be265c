// Copyright 2026 The fenet Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fenet/quantity.hpp"

namespace fenet {

struct TreeEdge {
  std::size_t u = 0;
  std::size_t v = 0;
  Quantity w = 0;
};

// Where demands and FCs live. A "site" is an index into the side-specific
// location list: a coordinate for line/euclidean, a tree node, or a matrix
// row (demands) / column (FCs).
class Metric {
 public:
  enum class Kind { Line, Euclidean, Tree, Matrix };

  static Metric line(std::vector<Quantity> demand_pos, std::vector<Quantity> fc_pos);
  // Coordinates are flattened, dim values per site.
  static Metric euclidean(int dim, std::vector<Quantity> demand_coords,
                          std::vector<Quantity> fc_coords);
  // Validates connectivity and acyclicity; precomputes distances from every
  // node that hosts an FC.
  static Metric tree(std::vector<std::string> nodes, std::vector<TreeEdge> edges,
                     std::vector<std::size_t> demand_node,
                     std::vector<std::size_t> fc_node);
  static Metric matrix(std::vector<std::vector<Quantity>> rows, std::size_t cols);

  Kind kind() const { return kind_; }
  const char* kind_name() const;
  int dimension() const { return dim_; }
  std::size_t demand_sites() const;
  std::size_t fc_sites() const;

  Quantity between(std::size_t demand_site, std::size_t fc_site) const;

  // Line and Euclidean only.
  std::span<const Quantity> demand_coords(std::size_t site) const;
  std::span<const Quantity> fc_coords(std::size_t site) const;

  // Tree only.
  const std::vector<std::string>& tree_nodes() const { return nodes_; }
  const std::vector<TreeEdge>& tree_edges() const { return edges_; }
  std::size_t demand_node(std::size_t site) const { return demand_node_[site]; }
  std::size_t fc_node(std::size_t site) const { return fc_node_[site]; }

 private:
  Metric() = default;

  Kind kind_ = Kind::Line;
  int dim_ = 0;
  std::vector<Quantity> demand_coords_;
  std::vector<Quantity> fc_coords_;
  std::vector<std::string> nodes_;
  std::vector<TreeEdge> edges_;
  std::vector<std::size_t> demand_node_;
  std::vector<std::size_t> fc_node_;
  std::vector<std::size_t> fc_node_slot_;
  std::vector<std::vector<Quantity>> node_dist_;
  std::vector<std::vector<Quantity>> rows_;
  std::size_t cols_ = 0;
};

struct Demand {
  std::string id;
  std::int64_t amount = 0;
  std::size_t site = 0;
};

struct Facility {
  std::string id;
  std::int64_t capacity = 0;
  std::size_t site = 0;
};

// Dense demand x FC distance table.
class CostMatrix {
 public:
  CostMatrix() = default;
  CostMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Quantity operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  Quantity& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Quantity max() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quantity> data_;
};

class Instance {
 public:
  // Validates unique ids, nonnegative quantities, site ranges and
  // total demand <= total capacity.
  Instance(std::vector<Demand> demands, std::vector<Facility> fcs,
           std::shared_ptr<const Metric> metric, Scale scale);

  const std::vector<Demand>& demands() const { return demands_; }
  const std::vector<Facility>& fcs() const { return fcs_; }
  const Metric& metric() const { return *metric_; }
  std::shared_ptr<const Metric> metric_ptr() const { return metric_; }
  Scale scale() const { return scale_; }

  std::size_t num_demands() const { return demands_.size(); }
  std::size_t num_fcs() const { return fcs_.size(); }
  std::int64_t total_demand() const;
  std::int64_t total_capacity() const;

  // Index lookups; throw UnknownId.
  std::size_t demand_index(std::string_view id) const;
  std::size_t fc_index(std::string_view id) const;

  Quantity distance(std::size_t i, std::size_t j) const {
    return metric_->between(demands_[i].site, fcs_[j].site);
  }
  Quantity distance(std::string_view demand_id, std::string_view fc_id) const;

  // Materialized and cached on first use.
  const CostMatrix& costs() const;

  // Sub-instance over the given demand and FC indices, same metric.
  Instance restricted(std::span<const std::size_t> demand_idx,
                      std::span<const std::size_t> fc_idx) const;
  Instance with_demands(std::vector<Demand> demands) const;
  Instance with_fcs(std::vector<Facility> fcs) const;

 private:
  std::vector<Demand> demands_;
  std::vector<Facility> fcs_;
  std::shared_ptr<const Metric> metric_;
  Scale scale_;
  struct CostCache;
  std::shared_ptr<CostCache> cache_;
};

// max / min-nonzero distance over all demand-FC pairs, as a reduced fraction.
struct Ratio {
  Quantity num = 1;
  Quantity den = 1;
  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

Ratio aspect_ratio(const Instance& instance);
// ceil(log2(rho)) computed exactly.
int ceil_log2(const Ratio& rho);

Instance load_instance(std::string_view json_text, Scale scale);
Instance load_instance_file(const std::string& path, Scale scale);
// Canonical JSON: fixed key order, 2-space indent, trailing newline.
std::string save_instance(const Instance& instance);

}  // namespace fenet
