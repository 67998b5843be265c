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
#include <limits>
#include <string>
#include <vector>

#include "fenet/instance.hpp"

namespace fenet {

inline constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

struct Flow {
  std::size_t demand = 0;
  std::size_t fc = 0;
  std::int64_t amount = 0;

  friend bool operator==(const Flow&, const Flow&) = default;
};

// Sparse integral flow, sorted by (demand, fc), zero entries omitted.
struct Assignment {
  std::vector<Flow> flows;
  Quantity cost = 0;
};

Quantity assignment_cost(const Instance& instance, const std::vector<Flow>& flows);
std::vector<std::int64_t> fc_loads(const Instance& instance, const Assignment& x);
// Empty when x ships every demand exactly and respects capacities.
std::vector<std::string> assignment_violations(const Instance& instance, const Assignment& x);
// Sorts, merges duplicate pairs, drops zeros and recomputes the cost.
Assignment make_assignment(const Instance& instance, std::vector<Flow> flows);

// Successive shortest augmenting paths with node potentials; exact and
// deterministic (ties go to the lowest demand / FC index).
Assignment min_cost_assignment(const Instance& instance);

// Exhaustive search over unit parcels. Bound: total demand <= 12, |F| <= 4.
Assignment brute_force_min_cost(const Instance& instance);
// Every optimal assignment within the same bound, in enumeration order.
std::vector<Assignment> all_min_cost_assignments(const Instance& instance,
                                                 std::size_t limit = 64);

struct SplitInstance {
  Instance instance;
  // For each demand of the split instance: original demand index and the
  // single FC it is assigned to (kNone for zero-demand nodes).
  std::vector<std::size_t> origin;
  std::vector<std::size_t> assigned_fc;
  Assignment assignment;
};

SplitInstance split_demands(const Instance& instance, const Assignment& x);

}  // namespace fenet
