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

#include <string>
#include <string_view>
#include <vector>

#include "fenet/dynamics.hpp"
#include "fenet/equilibrium.hpp"
#include "fenet/generators.hpp"
#include "fenet/regionalize.hpp"

namespace fenet {

// All quantities are printed as exact decimals of the scale units.
std::string assignment_csv(const Instance& instance, const Assignment& x);
std::string backlog_csv(const Instance& instance, const EquilibriumSolution& sol);
std::string delay_csv(const Instance& instance, const EquilibriumSolution& sol);
// Scaled integers plus the scale exponent.
std::string solution_json(const Instance& instance, const EquilibriumSolution& sol);
EquilibriumSolution solution_from_json(std::string_view text, const Instance& instance);

std::string regions_csv(const Instance& instance, const RegionalizedSolution& sol);

std::string trace_csv(const DynamicsTrace& trace);
std::string trace_summary_json(const DynamicsTrace& trace, const ConvergenceReport& report);

std::string sweep_csv(const std::vector<SweepRow>& rows, Scale scale);
std::string sweep_svg(const std::vector<SweepRow>& rows, Scale scale);

}  // namespace fenet
