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
#include <string>
#include <vector>

#include "fenet/instance.hpp"
#include "fenet/regionalize.hpp"

namespace fenet {

using DemandParts = std::vector<std::vector<std::size_t>>;

// n unit demands at (i + 1/2)/n, FCs f1 at 0 and f2 at 0.4 with n/2 each.
Instance generate_continuous_line(std::int64_t n, Scale scale = {});
// The natural 2-region split: demands at or below `cut` with f1, the rest with f2.
Regionalization continuous_line_split(const Instance& instance, Quantity cut);

struct LineLb {
  Instance instance;
  Regionalization k_regions;  // part s = {i_s} with {j_s}
};

// Demand i_1 (D' units) at 0 and FC j_1 (capacity D') at 1; then unit pairs
// i_s at s-1, j_s at s, with j_k pushed out to k + L.
LineLb generate_line_lb(int k, std::int64_t dprime, Quantity L, Scale scale = {});

struct LineLbClosedForm {
  Quantity one_region = 0;
  Quantity k_region = 0;
  std::vector<Quantity> backlogs;  // per FC j_1..j_k
};
LineLbClosedForm line_lb_closed_form(int k, std::int64_t dprime, Quantity L, Scale scale = {});

struct Partitioned {
  Instance instance;
  DemandParts demand_parts;
};

Partitioned generate_line_noncontig(Scale scale = {});
Partitioned generate_tree2(Quantity L, Quantity eps, Scale scale = {});

struct TreeFamily {
  Instance instance;
  DemandParts contiguous;
  DemandParts noncontiguous;
  // All z FCs with arm 0; arm m >= 1 keeps its own b FCs plus b_{0,m-1}.
  Regionalization alternate;
};

TreeFamily generate_tree_r(int r, Quantity L, Quantity eps, Scale scale = {});

struct FigureValue {
  std::string label;
  Quantity expected = 0;
  Quantity actual = 0;
};

struct FigureCheck {
  std::string figure;
  std::vector<FigureValue> values;
  std::vector<std::string> notes;
  bool ok() const;
  std::string report(Scale scale) const;
};

// Solver values for each reconstruction next to the caption's closed forms.
FigureCheck check_line_noncontig(Scale scale = {});
FigureCheck check_tree2(Quantity L, Quantity eps, Scale scale = {});
FigureCheck check_tree_r3(Quantity L, Quantity eps, Scale scale = {});

struct SyntheticConfig {
  std::uint64_t seed = 7;
  std::int64_t n_demands = 240;
  std::int64_t n_fcs = 12;
  std::string alpha = "0.6";
  std::int64_t clusters = 5;
  double spread = 60.0;  // mean radial falloff of a cluster
  double side = 1000.0;  // square side length
  double rural = 0.15;   // share of demand nodes placed uniformly
  // total capacity is ceil((1 + headroom) * total demand)
  std::string headroom = "0.1";
};

// Capacities alpha * C(v) + (1 - alpha) * C(e), both summing to the same
// total: C(e) is the equal split, C(v) the demand of each FC's Voronoi cell
// with the surplus shared out over the smallest decile.
Instance generate_synthetic_national(const SyntheticConfig& config, Scale scale = {});
std::vector<std::int64_t> voronoi_capacities(const Instance& instance, std::int64_t total);
std::vector<std::int64_t> equal_capacities(std::int64_t total, std::size_t k);
std::vector<std::int64_t> mix_capacities(const std::vector<std::int64_t>& cv,
                                         const std::vector<std::int64_t>& ce, Quantity alpha,
                                         Scale scale);

// Four quadrants around the square's centre. A quadrant short of supply
// hands border demand nodes to a neighbour with spare capacity.
Regionalization quadrant_regionalization(const Instance& instance, double side = 1000.0);

struct SweepRow {
  std::string alpha;
  Quantity delay = 0;
  Quantity min_cost = 0;
  Quantity max_backlog = 0;
};

std::vector<SweepRow> sweep_alpha(SyntheticConfig config, const std::vector<std::string>& alphas,
                                  Scale scale = {});
// Spearman rank correlation of delay against alpha (average ranks for ties).
double sweep_spearman(const std::vector<SweepRow>& rows, Scale scale = {});

}  // namespace fenet
