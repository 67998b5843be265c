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
#include <string_view>
#include <vector>

#include "fenet/equilibrium.hpp"
#include "fenet/instance.hpp"

namespace fenet {

struct Region {
  std::vector<std::size_t> demands;
  std::vector<std::size_t> fcs;
  // Scale decompositions only: distance class (0 for the zero-distance
  // region) and, per demand, the grid cell it falls in.
  int bucket = -1;
  std::vector<std::vector<std::int64_t>> cells;
};

struct Regionalization {
  std::vector<Region> parts;
};

// Every demand in exactly one part, every FC in at most one, and each
// part's capacity covers its demand.
void validate_regionalization(const Instance& instance, const Regionalization& reg);
// Parts that hold at least one demand.
std::size_t demand_region_count(const Regionalization& reg);

struct RegionalizedSolution {
  Regionalization regionalization;
  std::vector<Instance> instances;  // induced sub-instance per part
  std::vector<EquilibriumSolution> regions;
  Quantity total_delay = 0;
};

RegionalizedSolution solve_regionalized(const Instance& instance, const Regionalization& reg);

// Per-region values mapped back to instance indices. FCs outside every part
// get backlog 0.
EquilibriumSolution flatten(const Instance& instance, const RegionalizedSolution& sol);

Regionalization single_region(const Instance& instance);

// One part per FC holding the demands the min-cost assignment sends there.
// Unit demands only.
Regionalization k_regionalization(const Instance& instance);

// Scale decompositions over a min-cost matching of unit demands to unit FCs.
// Distances are normalized by the smallest nonzero demand-FC distance; a
// demand matched at normalized distance t > 0 lands in bucket d with
// 2^(d-1) < t <= 2^d (d >= 1), on a grid of cells of side 2^(d+1), and in
// region (d, cell mod B) with B = 2 + ceil(sqrt(q)). Demands matched at
// distance 0 share one extra region. Unmatched FCs go to a trailing part
// with no demands.
Regionalization line_scale_decomposition(const Instance& instance);
Regionalization euclidean_scale_decomposition(const Instance& instance);

// Within each grid cell of each decomposition region, some demand of the
// cell is served by an FC with zero backlog.
Verdict zero_beta_per_segment_check(const Instance& instance, const Regionalization& reg,
                                    const RegionalizedSolution& sol);

struct GroupingResult {
  Regionalization regionalization;
  Quantity total_delay = 0;
  std::size_t evaluated = 0;
};

// Exhaustive search over FC-to-part allocations for a fixed demand
// partition; every FC is placed in some part. Bound: |F| <= max_fcs.
GroupingResult search_best_fc_grouping(const Instance& instance,
                                       const std::vector<std::vector<std::size_t>>& demand_parts,
                                       std::size_t max_fcs = 10);

// FCs follow the demands they serve under x. An FC serving several parts is
// an error; unused FCs go to a trailing part with no demands.
Regionalization grouping_from_assignment(const Instance& instance,
                                         const std::vector<std::vector<std::size_t>>& demand_parts,
                                         const Assignment& x);

Regionalization load_regionalization(std::string_view json_text, const Instance& instance);
std::string save_regionalization(const Instance& instance, const Regionalization& reg);

}  // namespace fenet
