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

#include <numeric>

#include "fenet/equilibrium.hpp"
#include "fenet/generators.hpp"
#include "fenet/regionalize.hpp"

using namespace fenet;

namespace {

constexpr Quantity u = 1'000'000;

Quantity one_region_formula(std::int64_t k, std::int64_t dprime, std::int64_t L) {
  return (dprime * (L + k) + (k - 1) * (L + 1) + (k - 1) * (k - 2) / 2) * u;
}

}  // namespace

TEST_CASE("continuous line positions") {
  auto inst = generate_continuous_line(10);
  REQUIRE(inst.num_demands() == 10);
  for (std::size_t i = 0; i < 10; ++i) CHECK(inst.metric().demand_coords(inst.demands()[i].site)[0] == (100000 * i + 50000));
  CHECK(inst.fcs()[0].capacity == 5);
  CHECK(inst.distance(0, 1) == 350000);

  auto big = generate_continuous_line(1000);
  CHECK(min_delay_equilibrium(big).total_delay == 500 * u);
  CHECK(solve_regionalized(big, continuous_line_split(big, 500000)).total_delay == 300 * u);
}

TEST_CASE("line-lb closed forms") {
  struct Case {
    int k;
    std::int64_t dprime, L;
  };
  for (auto c : {Case{3, 10, 100}, Case{5, 50, 1000}, Case{4, 1, 7}, Case{2, 1, 0}}) {
    auto g = generate_line_lb(c.k, c.dprime, c.L * u);
    auto closed = line_lb_closed_form(c.k, c.dprime, c.L * u);
    CHECK(closed.one_region == one_region_formula(c.k, c.dprime, c.L));
    CHECK(closed.k_region == (c.dprime + c.k - 1 + c.L) * u);
    CHECK(min_delay_equilibrium(g.instance).total_delay == closed.one_region);
    CHECK(solve_regionalized(g.instance, g.k_regions).total_delay == closed.k_region);
  }
  auto tiny = generate_line_lb(2, 1, 0);
  CHECK(brute_force_min_delay(tiny.instance).total_delay == 3 * u);
}

TEST_CASE("line-lb gap grows with D'") {
  double prev = 0;
  for (std::int64_t dprime : {10, 100, 1000}) {
    auto c = line_lb_closed_form(3, dprime, 100000 * u);
    const double ratio = static_cast<double>(c.one_region) / static_cast<double>(c.k_region);
    CHECK(ratio > prev);
    prev = ratio;
  }
}

TEST_CASE("figure reconstructions") {
  auto a = check_line_noncontig();
  CHECK_MESSAGE(a.ok(), a.report(Scale{}));
  auto b = check_tree2(100 * u, u);
  CHECK_MESSAGE(b.ok(), b.report(Scale{}));
  auto c = check_tree_r3(100 * u, u);
  CHECK_MESSAGE(c.ok(), c.report(Scale{}));
}

TEST_CASE("trees-r gap approaches r") {
  for (int r : {2, 3, 4}) {
    auto t = generate_tree_r(r, 100000 * u, u);
    auto x = min_cost_assignment(t.instance);
    auto cg = solve_regionalized(t.instance, grouping_from_assignment(t.instance, t.contiguous, x));
    auto alt = solve_regionalized(t.instance, t.alternate);
    const double ratio = static_cast<double>(cg.total_delay) / static_cast<double>(alt.total_delay);
    CHECK(ratio == doctest::Approx(r).epsilon(0.01));
  }
}

TEST_CASE("synthetic generator") {
  SyntheticConfig cfg;
  auto a = generate_synthetic_national(cfg);
  auto b = generate_synthetic_national(cfg);
  CHECK(save_instance(a) == save_instance(b));
  CHECK(a.num_demands() == 240);
  CHECK(a.num_fcs() == 12);
  CHECK(a.total_capacity() >= a.total_demand());
  cfg.seed = 8;
  CHECK(save_instance(generate_synthetic_national(cfg)) != save_instance(a));

  const std::int64_t total = a.total_capacity();
  auto cv = voronoi_capacities(a, total);
  auto ce = equal_capacities(total, 12);
  CHECK(std::accumulate(cv.begin(), cv.end(), std::int64_t{0}) == total);
  CHECK(std::accumulate(ce.begin(), ce.end(), std::int64_t{0}) == total);
  auto mix = mix_capacities(cv, ce, 600000, Scale{});
  CHECK(std::accumulate(mix.begin(), mix.end(), std::int64_t{0}) == total);
  CHECK(mix_capacities(cv, ce, u, Scale{}) == cv);
  CHECK(mix_capacities(cv, ce, 0, Scale{}) == ce);
}

TEST_CASE("alpha extremes") {
  SyntheticConfig cfg;
  cfg.alpha = "1";
  auto v = generate_synthetic_national(cfg);
  auto sv = min_delay_equilibrium(v);
  for (Quantity b : sv.backlog) CHECK(b == 0);
  CHECK(sv.total_delay == sv.assignment.cost);
  cfg.alpha = "0";
  auto e = min_delay_equilibrium(generate_synthetic_national(cfg));
  Quantity top = 0;
  for (Quantity b : e.backlog) top = std::max(top, b);
  CHECK(top > 0);
  CHECK(e.total_delay >= sv.total_delay);
}

TEST_CASE("quadrant split and sweep") {
  SyntheticConfig cfg;
  auto inst = generate_synthetic_national(cfg);
  auto reg = quadrant_regionalization(inst);
  validate_regionalization(inst, reg);
  CHECK(demand_region_count(reg) == 4);
  auto rows = sweep_alpha(cfg, {"0", "0.25", "0.5", "0.75", "1"});
  REQUIRE(rows.size() == 5);
  CHECK(rows[4].delay == rows[4].min_cost);
  CHECK(rows[4].max_backlog == 0);
  CHECK(rows[0].delay >= rows[4].delay);
  CHECK(sweep_spearman(rows) <= 0);
}
