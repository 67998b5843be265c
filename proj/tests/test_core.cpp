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

#include <cstdlib>
#include <random>

#include "fenet/error.hpp"
#include "fenet/generators.hpp"
#include "fenet/instance.hpp"
#include "fenet/quantity.hpp"
#include "support.hpp"

using namespace fenet;

namespace {

constexpr Quantity u = 1'000'000;

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::Invariant;
}

}  // namespace

TEST_CASE("decimal parsing is exact") {
  Scale s;
  CHECK(parse_decimal("0.4", s) == 400000);
  CHECK(parse_decimal("-1.25", s) == -1250000);
  CHECK(parse_decimal("12", s) == 12 * u);
  CHECK(parse_decimal("1e-3", s) == 1000);
  CHECK(format_decimal(400000, s) == "0.4");
  CHECK(format_decimal(-1250000, s) == "-1.25");
  CHECK(format_decimal(0, s) == "0");
  CHECK(format_decimal(12 * u, s) == "12");
  CHECK(kind_of([&] { parse_decimal("0.0000001", s); }) == ErrorKind::Parse);
  CHECK(kind_of([&] { parse_decimal("abc", s); }) == ErrorKind::Parse);
  // rounding inside the tolerance is accepted
  CHECK(parse_decimal("1000000000.0000001", s) == 1000000000LL * u);
}

TEST_CASE("scale spellings") {
  CHECK(Scale::parse("1000000").exponent == 6);
  CHECK(Scale::parse("1e3").exponent == 3);
  CHECK(Scale::parse("10^9").exponent == 9);
  CHECK(Scale::parse("1").exponent == 0);
  CHECK_THROWS_AS(Scale::parse("500"), Error);
  CHECK_THROWS_AS(Scale::parse("1e12"), Error);
  CHECK(parse_decimal("0.4", Scale::from_exponent(3)) == 400);
}

TEST_CASE("quantize_ratio and checked arithmetic") {
  Scale s;
  CHECK(quantize_ratio(1, 2, s) == 500000);
  CHECK(quantize_ratio(3, 8, s) == 375000);
  CHECK_THROWS_AS(quantize_ratio(1, 3, s), Error);
  CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), Error);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), Error);
}

TEST_CASE("two-node line instance") {
  auto inst = load_instance(
      R"({"metric":{"type":"line"},"demands":[{"id":"a","pos":"0","d":1}],"fcs":[{"id":"f","pos":"1","c":1}]})",
      Scale{});
  CHECK(inst.distance("a", "f") == u);
  CHECK(inst.total_demand() == 1);
  CHECK(kind_of([&] { inst.distance("a", "g"); }) == ErrorKind::UnknownId);
  auto rho = aspect_ratio(inst);
  CHECK(rho.num == rho.den);
}

TEST_CASE("load errors name the violated condition") {
  auto err = [](const char* doc) {
    try {
      load_instance(doc, Scale{});
    } catch (const Error& e) {
      return std::pair{e.kind(), std::string(e.what())};
    }
    return std::pair{ErrorKind::Invariant, std::string("accepted")};
  };
  auto [k1, m1] = err(
      R"({"metric":{"type":"line"},"demands":[{"id":"a","pos":"0","d":3}],"fcs":[{"id":"f","pos":"1","c":2}]})");
  CHECK(k1 == ErrorKind::Infeasible);
  CHECK(m1.find("supply < demand") != std::string::npos);
  auto [k2, m2] = err(
      R"({"metric":{"type":"line"},"demands":[{"id":"a","pos":"0","d":-1}],"fcs":[{"id":"f","pos":"1","c":2}]})");
  CHECK(k2 == ErrorKind::InvalidInstance);
  CHECK(m2.find("negative") != std::string::npos);
  auto [k3, m3] = err(
      R"({"metric":{"type":"tree","nodes":["x","y","z"],"edges":[{"u":"x","v":"y","w":"1"}]},)"
      R"("demands":[{"id":"a","node":"x","d":1}],"fcs":[{"id":"f","node":"z","c":1}]})");
  CHECK(k3 == ErrorKind::InvalidInstance);
  CHECK(m3.find("tree") != std::string::npos);
  auto [k4, m4] = err(R"({"metric":{"type":"line"},"demands":[)");
  CHECK(k4 == ErrorKind::Parse);
  auto [k5, m5] = err(
      R"({"metric":{"type":"line"},"demands":[{"id":"a","pos":"0","d":1},{"id":"a","pos":"0","d":1}],)"
      R"("fcs":[{"id":"f","pos":"1","c":2}]})");
  CHECK(k5 == ErrorKind::InvalidArgument);
  auto [k6, m6] = err(
      R"({"metric":{"type":"line"},"demands":[{"id":"a","pos":"0","d":1,"extra":1}],"fcs":[{"id":"f","pos":"1","c":2}]})");
  CHECK(k6 == ErrorKind::Parse);
}

TEST_CASE("metric variants") {
  auto tree = load_instance(
      R"({"metric":{"type":"tree","nodes":["x","y","z"],"edges":[{"u":"x","v":"y","w":"100"},{"u":"y","v":"z","w":"1"}]},)"
      R"("demands":[{"id":"a","node":"x","d":1}],"fcs":[{"id":"f","node":"z","c":1},{"id":"g","node":"x","c":1}]})",
      Scale{});
  CHECK(tree.distance("a", "f") == 101 * u);
  CHECK(tree.distance("a", "g") == 0);
  auto euc = load_instance(
      R"({"metric":{"type":"euclidean","dim":2},"demands":[{"id":"a","pos":["0","0"],"d":1}],)"
      R"("fcs":[{"id":"f","pos":["3","4"],"c":1}]})",
      Scale{});
  CHECK(euc.distance("a", "f") == 5 * u);
  auto mat = load_instance(
      R"({"metric":{"type":"matrix","rows":[["1","8"]]},"demands":[{"id":"a","d":1}],)"
      R"("fcs":[{"id":"f","c":1},{"id":"g","c":1}]})",
      Scale{});
  CHECK(mat.distance("a", "g") == 8 * u);
  auto rho = aspect_ratio(mat);
  CHECK(rho.num == 8 * rho.den);
  CHECK(ceil_log2(rho) == 3);
  CHECK(ceil_log2(Ratio{9, 1}) == 4);
  CHECK(ceil_log2(Ratio{1, 1}) == 0);
}

TEST_CASE("all-zero distances have no aspect ratio") {
  auto inst = load_instance(
      R"({"metric":{"type":"line"},"demands":[{"id":"a","pos":"1","d":1}],"fcs":[{"id":"f","pos":"1","c":1}]})",
      Scale{});
  CHECK(inst.distance(0, 0) == 0);
  CHECK_THROWS_AS(aspect_ratio(inst), Error);
}

TEST_CASE("line-lb instance loads back with k=3 and D=12") {
  auto g = generate_line_lb(3, 10, 100 * u);
  auto back = load_instance(save_instance(g.instance), Scale{});
  CHECK(back.num_fcs() == 3);
  CHECK(back.total_demand() == 12);
  // aspect ratio by exhaustive scan
  Quantity lo = INT64_MAX, hi = 0;
  for (std::size_t i = 0; i < back.num_demands(); ++i)
    for (std::size_t j = 0; j < back.num_fcs(); ++j) {
      const Quantity d = back.distance(i, j);
      hi = std::max(hi, d);
      if (d > 0) lo = std::min(lo, d);
    }
  auto rho = aspect_ratio(back);
  CHECK(static_cast<__int128>(rho.num) * lo == static_cast<__int128>(rho.den) * hi);
}

TEST_CASE("save_instance round trip is byte identical") {
  testing::Rng rng(11);
  for (int t = 0; t < 40; ++t) {
    auto inst = testing::random_instance(rng, {});
    const std::string once = save_instance(inst);
    CHECK(save_instance(load_instance(once, Scale{})) == once);
  }
}

TEST_CASE("distances do not depend on node order") {
  testing::Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    auto inst = testing::random_instance(rng, {});
    std::vector<Demand> d(inst.demands().rbegin(), inst.demands().rend());
    std::vector<Facility> f(inst.fcs().rbegin(), inst.fcs().rend());
    Instance rev(d, f, inst.metric_ptr(), inst.scale());
    for (const auto& a : inst.demands())
      for (const auto& b : inst.fcs()) {
        CHECK(rev.distance(a.id, b.id) == inst.distance(a.id, b.id));
        CHECK(inst.distance(a.id, b.id) >= 0);
      }
  }
}

TEST_CASE("FE_SCALE is read from the environment") {
  setenv("FE_SCALE", "10^3", 1);
  CHECK(Scale::from_env().exponent == 3);
  unsetenv("FE_SCALE");
  CHECK(Scale::from_env().exponent == 6);
}
