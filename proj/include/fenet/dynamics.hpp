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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fenet/equilibrium.hpp"
#include "fenet/instance.hpp"

namespace fenet {

enum class Routing {
  Greedy,  // each demand's rate goes to argmin_j(l_ij + backlog_j), split evenly
  Fixed,   // rates follow a given assignment's proportions
};

struct SimulationConfig {
  Quantity dt = 0;  // time step, in distance scale units
  std::int64_t steps = 0;
  std::int64_t sample_every = 1;
  Routing routing = Routing::Greedy;
  std::optional<Assignment> fixed;
  // Starting backlog per FC (time units); queue = backlog * capacity.
  std::vector<Quantity> initial_backlog;
};

// Queues are counted in quanta of (demand unit x one time scale unit), so
// a backlog is exactly floor(queue / capacity) in time scale units.
struct DynamicsSample {
  std::int64_t step = 0;
  Quantity t = 0;
  std::vector<std::int64_t> queue;
  std::vector<Quantity> backlog;
  std::vector<std::int64_t> inflow;  // quanta routed to each FC in the last step
};

struct DynamicsTrace {
  Scale scale;
  Quantity dt = 0;
  std::vector<std::string> fc_ids;
  std::uint64_t fingerprint = 0;
  std::vector<DynamicsSample> samples;
  std::int64_t injected = 0;
  std::int64_t processed = 0;
  std::int64_t idle = 0;           // service capacity unused because a queue ran dry
  std::int64_t clamped_steps = 0;  // steps in which some queue hit the zero floor
  std::int64_t conservation_errors = 0;
  std::int64_t initial_total = 0;
  std::int64_t final_total = 0;
};

DynamicsTrace simulate(const Instance& instance, const SimulationConfig& config);

// Hash of FC ids and capacities; ties a trace to its instance.
std::uint64_t fc_fingerprint(const Instance& instance);

struct ConvergenceReport {
  Quantity final_residual = 0;  // max_j |backlog_j(T) - backlog*_j|
  double mean_residual = 0;     // time average over samples, time units
  double tail_mean = 0;         // last fifth of the samples
  double previous_mean = 0;     // fifth before that
  bool oscillating = false;
  std::vector<Quantity> final_backlog;
  std::vector<Quantity> static_backlog;
};

// `tolerance` is the residual (time scale units) below which a flat tail
// counts as converged rather than oscillating; defaults to 2 * dt.
ConvergenceReport compare_to_static(const DynamicsTrace& trace, const Instance& instance,
                                    const EquilibriumSolution& sol, Quantity tolerance = -1);

}  // namespace fenet
