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

#include <doctest.h>

#include "fenet/error.hpp"
#include "fenet/generators.hpp"
#include "fenet/regionalize.hpp"
#include "support.hpp"

using namespace fenet;
using namespace fenet::testing;

namespace {

constexpr Quantity u = 1'000'000;

std::size_t zero_region(const Regionalization& reg) {
  for (const auto& p : reg.parts)
    if (p.bucket == 0 && !p.demands.empty()) return 1;
  return 0;
}

}  // namespace

TEST_CASE("continuous line split drops delay to 0.3") {
  auto inst = generate_continuous_line(1000);
  auto sol = solve_regionalized(inst, continuous_line_split(inst, 500000));
  CHECK(sol.total_delay == 300 * u);
  for (const auto& r : sol.regions)
    for (Quantity b : r.backlog) CHECK(b == 0);
}

TEST_CASE("single region equals the global solve") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    auto inst = random_instance(rng, {});
    auto global = min_delay_equilibrium(inst);
    auto one = solve_regionalized(inst, single_region(inst));
    CHECK(one.total_delay == global.total_delay);
    auto flat = flatten(inst, one);
    CHECK(flat.delay == global.delay);
    CHECK(flat.backlog == global.backlog);
  }
}

TEST_CASE("line-lb with k regions") {
  for (std::int64_t dprime : {1, 10}) {
    auto g = generate_line_lb(3, dprime, 100 * u);
    auto sol = solve_regionalized(g.instance, g.k_regions);
    CHECK(sol.total_delay == (dprime + 3 - 1 + 100) * u);
  }
  auto unit = generate_line_lb(3, 1, 100 * u);
  auto kr = solve_regionalized(unit.instance, k_regionalization(unit.instance));
  CHECK(kr.total_delay == (1 + 2 + 100) * u);
}

TEST_CASE("k-regionalization reaches the min cost") {
  Rng rng(17);
  InstanceShape shape;
  shape.unit = true;
  for (int t = 0; t < 40; ++t) {
    auto inst = random_instance(rng, shape);
    auto reg = k_regionalization(inst);
    validate_regionalization(inst, reg);
    auto sol = solve_regionalized(inst, reg);
    CHECK(sol.total_delay == min_cost_assignment(inst).cost);
    for (const auto& r : sol.regions)
      for (Quantity b : r.backlog) CHECK(b == 0);
  }
  Instance one(make_demands({1, 1, 1}), make_fcs({5}), std::make_shared<Metric>(Metric::line({0, 1, 2}, {3})),
               Scale{});
  CHECK(demand_region_count(k_regionalization(one)) == 1);
}

TEST_CASE("validation errors") {
  auto inst = generate_continuous_line(4);
  Regionalization bad;
  bad.parts.push_back({{0, 1, 2, 3}, {0}, -1, {}});
  CHECK_THROWS_AS(validate_regionalization(inst, bad), Error);
  Regionalization missing;
  missing.parts.push_back({{0, 1}, {0, 1}, -1, {}});
  CHECK_THROWS_AS(validate_regionalization(inst, missing), Error);
  Regionalization twice;
  twice.parts.push_back({{0, 1}, {0}, -1, {}});
  twice.parts.push_back({{1, 2, 3}, {1}, -1, {}});
  CHECK_THROWS_AS(validate_regionalization(inst, twice), Error);
  try {
    solve_regionalized(inst, bad);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
  }
}

TEST_CASE("regionalization documents round trip") {
  auto inst = generate_continuous_line(10);
  auto reg = continuous_line_split(inst, 500000);
  const std::string doc = save_regionalization(inst, reg);
  auto back = load_regionalization(doc, inst);
  CHECK(save_regionalization(inst, back) == doc);
  CHECK_THROWS_AS(load_regionalization(R"({"parts":[{"demands":["nope"],"fcs":[]}]})", inst), Error);
  CHECK_THROWS_AS(load_regionalization("{", inst), Error);
}

TEST_CASE("two far-apart pairs split into zero-backlog regions") {
  Instance inst(make_demands({1, 1}), make_fcs({1, 1}),
                std::make_shared<Metric>(Metric::line({0, 1000 * u}, {u, 1001 * u})), Scale{});
  auto reg = line_scale_decomposition(inst);
  auto sol = solve_regionalized(inst, reg);
  CHECK(sol.total_delay == min_cost_assignment(inst).cost);
  CHECK(zero_beta_per_segment_check(inst, reg, sol).ok());
}

TEST_CASE("line decomposition bounds") {
  Rng rng(31);
  for (int t = 0; t < 30; ++t) {
    auto inst = random_unit_points(rng, 1, static_cast<std::size_t>(uniform(rng, 2, 25)), 1000);
    auto reg = line_scale_decomposition(inst);
    validate_regionalization(inst, reg);
    auto sol = solve_regionalized(inst, reg);
    const int lg = ceil_log2(aspect_ratio(inst));
    CHECK(demand_region_count(reg) <= static_cast<std::size_t>(3 * lg) + zero_region(reg));
    CHECK(sol.total_delay <= 6 * min_cost_assignment(inst).cost);
    CHECK(zero_beta_per_segment_check(inst, reg, sol).ok());
  }
}

TEST_CASE("euclidean decomposition with q=1 matches the line version") {
  Rng rng(41);
  for (int t = 0; t < 10; ++t) {
    auto line = random_unit_points(rng, 1, 12, 500);
    std::vector<Quantity> dp, fp;
    for (const auto& d : line.demands()) dp.push_back(line.metric().demand_coords(d.site)[0]);
    for (const auto& f : line.fcs()) fp.push_back(line.metric().fc_coords(f.site)[0]);
    Instance euc(line.demands(), line.fcs(), std::make_shared<Metric>(Metric::euclidean(1, dp, fp)), Scale{});
    CHECK(save_regionalization(line, line_scale_decomposition(line)) ==
          save_regionalization(euc, euclidean_scale_decomposition(euc)));
  }
}

TEST_CASE("plane decomposition bounds") {
  Rng rng(43);
  for (int t = 0; t < 20; ++t) {
    auto inst = random_unit_points(rng, 2, static_cast<std::size_t>(uniform(rng, 2, 30)), 1000);
    auto reg = euclidean_scale_decomposition(inst);
    auto sol = solve_regionalized(inst, reg);
    CHECK(demand_region_count(reg) <= static_cast<std::size_t>(16 * ceil_log2(aspect_ratio(inst))) + zero_region(reg));
    const __int128 opt = min_cost_assignment(inst).cost;
    const __int128 excess = sol.total_delay - 2 * opt;
    CHECK((excess <= 0 || excess * excess <= 32 * opt * opt));
    CHECK(zero_beta_per_segment_check(inst, reg, sol).ok());
  }
}

TEST_CASE("one occupied cell gives one region") {
  Instance inst(make_demands({1, 1}), make_fcs({1, 1}),
                std::make_shared<Metric>(Metric::euclidean(2, {0, 0, 0, 3 * u}, {2 * u, 0, 2 * u, 3 * u})), Scale{});
  CHECK(demand_region_count(euclidean_scale_decomposition(inst)) == 1);
}

TEST_CASE("segment check fails when every backlog is positive") {
  auto inst = generate_continuous_line(4);
  Regionalization reg;
  Region r;
  r.demands = {0, 1, 2, 3};
  r.fcs = {0, 1};
  r.bucket = 1;
  r.cells = {{0}, {0}, {0}, {0}};
  reg.parts.push_back(r);
  auto sol = solve_regionalized(inst, reg);
  CHECK(zero_beta_per_segment_check(inst, reg, sol).ok());
  for (auto& b : sol.regions[0].backlog) b += 1;
  CHECK_FALSE(zero_beta_per_segment_check(inst, reg, sol).ok());
}

TEST_CASE("grouping search and figure reconstructions") {
  auto p = generate_line_noncontig();
  auto best = search_best_fc_grouping(p.instance, p.demand_parts);
  CHECK(best.total_delay == 7 * u);
  auto global = solve_regionalized(
      p.instance, grouping_from_assignment(p.instance, p.demand_parts, min_cost_assignment(p.instance)));
  CHECK(global.total_delay == 8 * u);
  CHECK(min_cost_assignment(p.instance).cost < 7 * u);
  CHECK(check_line_noncontig().ok());
  CHECK(check_tree2(100 * u, u).ok());
  CHECK(check_tree_r3(100 * u, u).ok());
}
