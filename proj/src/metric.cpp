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

#include <cmath>
#include <limits>
#include <string>

#include "fenet/error.hpp"
#include "fenet/instance.hpp"

namespace fenet {

namespace {

using u128 = unsigned __int128;

constexpr Quantity kCoordLimit = Quantity{1} << 60;

// Nearest integer to sqrt(v).
Quantity rounded_sqrt(u128 v) {
  auto s = static_cast<u128>(std::sqrt(static_cast<long double>(v)));
  while (s * s > v) --s;
  while ((s + 1) * (s + 1) <= v) ++s;
  if (v - s * s > s) ++s;
  return static_cast<Quantity>(s);
}

void check_coords(const std::vector<Quantity>& c) {
  for (Quantity x : c)
    if (x > kCoordLimit || x < -kCoordLimit)
      fail(ErrorKind::Bounds, "coordinate magnitude too large");
}

}  // namespace

Metric Metric::line(std::vector<Quantity> demand_pos, std::vector<Quantity> fc_pos) {
  check_coords(demand_pos);
  check_coords(fc_pos);
  Metric m;
  m.kind_ = Kind::Line;
  m.dim_ = 1;
  m.demand_coords_ = std::move(demand_pos);
  m.fc_coords_ = std::move(fc_pos);
  return m;
}

Metric Metric::euclidean(int dim, std::vector<Quantity> demand_coords,
                         std::vector<Quantity> fc_coords) {
  if (dim < 1 || dim > 16)
    fail(ErrorKind::InvalidArgument, "euclidean dimension must be in [1, 16]");
  auto d = static_cast<std::size_t>(dim);
  if (demand_coords.size() % d != 0 || fc_coords.size() % d != 0)
    fail(ErrorKind::InvalidArgument, "coordinate count is not a multiple of dim");
  check_coords(demand_coords);
  check_coords(fc_coords);
  Metric m;
  m.kind_ = Kind::Euclidean;
  m.dim_ = dim;
  m.demand_coords_ = std::move(demand_coords);
  m.fc_coords_ = std::move(fc_coords);
  return m;
}

Metric Metric::tree(std::vector<std::string> nodes, std::vector<TreeEdge> edges,
                    std::vector<std::size_t> demand_node,
                    std::vector<std::size_t> fc_node) {
  const std::size_t n = nodes.size();
  if (n == 0) fail(ErrorKind::InvalidInstance, "tree has no nodes");
  if (edges.size() != n - 1)
    fail(ErrorKind::InvalidInstance, "tree must have exactly nodes-1 edges (" +
                                   std::to_string(n) + " nodes, " +
                                   std::to_string(edges.size()) + " edges)");
  std::vector<std::vector<std::pair<std::size_t, Quantity>>> adj(n);
  for (const auto& e : edges) {
    if (e.u >= n || e.v >= n) fail(ErrorKind::InvalidArgument, "edge endpoint out of range");
    if (e.w < 0) fail(ErrorKind::InvalidInstance, "negative edge weight");
    adj[e.u].push_back({e.v, e.w});
    adj[e.v].push_back({e.u, e.w});
  }
  for (std::size_t s : demand_node)
    if (s >= n) fail(ErrorKind::InvalidArgument, "demand node out of range");
  for (std::size_t s : fc_node)
    if (s >= n) fail(ErrorKind::InvalidArgument, "fc node out of range");

  auto sweep = [&](std::size_t src) {
    std::vector<Quantity> dist(n, -1);
    std::vector<std::size_t> stack{src};
    dist[src] = 0;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (auto [v, w] : adj[u]) {
        if (dist[v] >= 0) continue;
        dist[v] = checked_add(dist[u], w);
        stack.push_back(v);
      }
    }
    return dist;
  };

  auto probe = sweep(0);
  for (std::size_t v = 0; v < n; ++v)
    if (probe[v] < 0)
      fail(ErrorKind::InvalidInstance, "tree is disconnected (node '" + nodes[v] +
                                     "' unreachable)");

  Metric m;
  m.kind_ = Kind::Tree;
  m.fc_node_slot_.assign(n, std::numeric_limits<std::size_t>::max());
  for (std::size_t s : fc_node) {
    if (m.fc_node_slot_[s] != std::numeric_limits<std::size_t>::max()) continue;
    m.fc_node_slot_[s] = m.node_dist_.size();
    m.node_dist_.push_back(sweep(s));
  }
  m.nodes_ = std::move(nodes);
  m.edges_ = std::move(edges);
  m.demand_node_ = std::move(demand_node);
  m.fc_node_ = std::move(fc_node);
  return m;
}

Metric Metric::matrix(std::vector<std::vector<Quantity>> rows, std::size_t cols) {
  for (const auto& r : rows) {
    if (r.size() != cols) fail(ErrorKind::InvalidArgument, "ragged distance matrix");
    for (Quantity v : r)
      if (v < 0) fail(ErrorKind::InvalidInstance, "negative distance in matrix");
  }
  Metric m;
  m.kind_ = Kind::Matrix;
  m.rows_ = std::move(rows);
  m.cols_ = cols;
  return m;
}

const char* Metric::kind_name() const {
  switch (kind_) {
    case Kind::Line: return "line";
    case Kind::Euclidean: return "euclidean";
    case Kind::Tree: return "tree";
    case Kind::Matrix: return "matrix";
  }
  return "?";
}

std::size_t Metric::demand_sites() const {
  switch (kind_) {
    case Kind::Line:
    case Kind::Euclidean: return demand_coords_.size() / static_cast<std::size_t>(dim_);
    case Kind::Tree: return demand_node_.size();
    case Kind::Matrix: return rows_.size();
  }
  return 0;
}

std::size_t Metric::fc_sites() const {
  switch (kind_) {
    case Kind::Line:
    case Kind::Euclidean: return fc_coords_.size() / static_cast<std::size_t>(dim_);
    case Kind::Tree: return fc_node_.size();
    case Kind::Matrix: return cols_;
  }
  return 0;
}

Quantity Metric::between(std::size_t ds, std::size_t fs) const {
  switch (kind_) {
    case Kind::Line: {
      Quantity a = demand_coords_[ds];
      Quantity b = fc_coords_[fs];
      return a > b ? a - b : b - a;
    }
    case Kind::Euclidean: {
      auto d = static_cast<std::size_t>(dim_);
      u128 sum = 0;
      for (std::size_t c = 0; c < d; ++c) {
        __int128 diff = static_cast<__int128>(demand_coords_[ds * d + c]) -
                        fc_coords_[fs * d + c];
        u128 mag = static_cast<u128>(diff < 0 ? -diff : diff);
        sum += mag * mag;
      }
      return rounded_sqrt(sum);
    }
    case Kind::Tree:
      return node_dist_[fc_node_slot_[fc_node_[fs]]][demand_node_[ds]];
    case Kind::Matrix:
      return rows_[ds][fs];
  }
  return 0;
}

std::span<const Quantity> Metric::demand_coords(std::size_t site) const {
  auto d = static_cast<std::size_t>(dim_);
  return {demand_coords_.data() + site * d, d};
}

std::span<const Quantity> Metric::fc_coords(std::size_t site) const {
  auto d = static_cast<std::size_t>(dim_);
  return {fc_coords_.data() + site * d, d};
}

Quantity CostMatrix::max() const {
  Quantity m = 0;
  for (Quantity v : data_) m = v > m ? v : m;
  return m;
}

}  // namespace fenet
