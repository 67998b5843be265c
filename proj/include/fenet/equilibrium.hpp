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
#include <string>
#include <utility>
#include <vector>

#include "fenet/assignment.hpp"
#include "fenet/instance.hpp"

namespace fenet {

struct EquilibriumSolution {
  Assignment assignment;
  std::vector<Quantity> backlog;  // per FC
  std::vector<Quantity> delay;    // per demand
  Quantity total_delay = 0;       // sum of D_i * delay_i
};

struct Verdict {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Min-cost assignment, demand splitting, then shortest paths from a root in
// the residual graph: backlog_j = -dist(j), delay_i = -dist(i).
EquilibriumSolution min_delay_equilibrium(const Instance& instance);

// Same construction for a fixed assignment x, which must be cost-optimal.
EquilibriumSolution equilibrium_delay_of(const Instance& instance, const Assignment& x);

// Capacity, argmin support, slack FC => zero backlog, dual feasibility,
// delay_i = min_j(l_ij + backlog_j), total delay, and cost optimality.
Verdict verify_equilibrium(const Instance& instance, const EquilibriumSolution& sol);

struct OracleStats {
  std::size_t grid_points = 0;
  std::size_t equilibria = 0;
  // Componentwise minimum of the delay vectors of every equilibrium found.
  std::vector<Quantity> delay_floor;
};

// Enumerates backlog vectors on the grid step*{0..bound}^k with step the gcd
// of all distances and bound max distance * total demand; keeps those that
// admit an equilibrium assignment. Bound: total demand <= 8, |F| <= 3.
EquilibriumSolution brute_force_min_delay(const Instance& instance,
                                          OracleStats* stats = nullptr);

struct TightEdgeGraph {
  std::vector<std::pair<std::size_t, std::size_t>> edges;  // (demand, fc)
};

TightEdgeGraph tight_edges(const Instance& instance, const EquilibriumSolution& sol);

// Connected components of the tight-edge graph, each as (demands, fcs).
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
tight_components(const Instance& instance, const TightEdgeGraph& graph);

// Every component of the tight-edge graph contains an FC with zero backlog.
bool components_have_zero_backlog(const Instance& instance, const EquilibriumSolution& sol);

// Sum of D_i * delay_i - sum of C_j * backlog_j.
Quantity dual_objective(const Instance& instance, const EquilibriumSolution& sol);

}  // namespace fenet
