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

// Random instance families shared by the unit and acceptance tests.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "fenet/assignment.hpp"
#include "fenet/instance.hpp"

namespace fenet::testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

inline std::vector<Demand> make_demands(const std::vector<std::int64_t>& amounts) {
  std::vector<Demand> out;
  for (std::size_t i = 0; i < amounts.size(); ++i) out.push_back({"d" + std::to_string(i), amounts[i], i});
  return out;
}

inline std::vector<Facility> make_fcs(const std::vector<std::int64_t>& caps) {
  std::vector<Facility> out;
  for (std::size_t j = 0; j < caps.size(); ++j) out.push_back({"f" + std::to_string(j), caps[j], j});
  return out;
}

// Capacities that cover the demand, with the surplus spread at random.
inline std::vector<std::int64_t> covering_capacities(Rng& rng, std::size_t k, std::int64_t total, std::int64_t slack) {
  std::vector<std::int64_t> caps(k, 0);
  for (std::int64_t u = 0; u < total + slack; ++u) ++caps[uniform(rng, 0, static_cast<std::int64_t>(k) - 1)];
  return caps;
}

inline std::shared_ptr<Metric> random_metric(Rng& rng, std::size_t n, std::size_t k, std::int64_t span, int kind) {
  switch (kind) {
    case 0: {
      std::vector<Quantity> dp(n), fp(k);
      for (auto& p : dp) p = uniform(rng, 0, span);
      for (auto& p : fp) p = uniform(rng, 0, span);
      return std::make_shared<Metric>(Metric::line(dp, fp));
    }
    case 1: {
      std::vector<Quantity> dc(2 * n), fc(2 * k);
      for (auto& p : dc) p = uniform(rng, 0, span);
      for (auto& p : fc) p = uniform(rng, 0, span);
      return std::make_shared<Metric>(Metric::euclidean(2, dc, fc));
    }
    case 2: {
      const std::size_t nodes = static_cast<std::size_t>(uniform(rng, 2, 8));
      std::vector<std::string> names;
      std::vector<TreeEdge> edges;
      for (std::size_t v = 0; v < nodes; ++v) names.push_back("n" + std::to_string(v));
      for (std::size_t v = 1; v < nodes; ++v)
        edges.push_back({static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(v) - 1)), v,
                         uniform(rng, 0, span / 4)});
      std::vector<std::size_t> dn(n), fn(k);
      for (auto& v : dn) v = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(nodes) - 1));
      for (auto& v : fn) v = static_cast<std::size_t>(uniform(rng, 0, static_cast<std::int64_t>(nodes) - 1));
      return std::make_shared<Metric>(Metric::tree(names, edges, dn, fn));
    }
    default: {
      std::vector<std::vector<Quantity>> rows(n, std::vector<Quantity>(k));
      for (auto& r : rows)
        for (auto& v : r) v = uniform(rng, 0, span);
      return std::make_shared<Metric>(Metric::matrix(rows, k));
    }
  }
}

struct InstanceShape {
  std::size_t max_demands = 20;
  std::size_t max_fcs = 6;
  std::int64_t max_amount = 5;
  std::int64_t max_total = 0;  // 0: no cap
  std::int64_t span = 20;      // distances are drawn from [0, span]
  std::int64_t max_slack = 4;
  int kind = -1;               // metric kind, -1 for random
  bool unit = false;
};

inline Instance random_instance(Rng& rng, const InstanceShape& shape) {
  const std::size_t n = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(shape.max_demands)));
  const std::size_t k = static_cast<std::size_t>(uniform(rng, 1, static_cast<std::int64_t>(shape.max_fcs)));
  std::vector<std::int64_t> amounts(n);
  std::int64_t total = 0;
  for (auto& a : amounts) {
    a = shape.unit ? 1 : uniform(rng, 0, shape.max_amount);
    if (shape.max_total > 0 && total + a > shape.max_total) a = std::max<std::int64_t>(0, shape.max_total - total);
    total += a;
  }
  auto caps = covering_capacities(rng, k, total, uniform(rng, 0, shape.max_slack));
  const int kind = shape.kind >= 0 ? shape.kind : static_cast<int>(uniform(rng, 0, 3));
  return Instance(make_demands(amounts), make_fcs(caps), random_metric(rng, n, k, shape.span, kind), Scale{});
}

// Unit demands and unit FCs, at least as many FCs as demands. Resampled
// until the aspect ratio exceeds 1.
inline Instance random_unit_points(Rng& rng, int dim, std::size_t n, std::int64_t span) {
  for (;;) {
    const std::size_t k = n + static_cast<std::size_t>(uniform(rng, 0, 3));
    std::vector<Quantity> dc(dim * n), fc(dim * k);
    for (auto& p : dc) p = uniform(rng, 0, span);
    for (auto& p : fc) p = uniform(rng, 0, span);
    auto metric = dim == 1 ? std::make_shared<Metric>(Metric::line(dc, fc))
                           : std::make_shared<Metric>(Metric::euclidean(dim, dc, fc));
    Instance inst(make_demands(std::vector<std::int64_t>(n, 1)), make_fcs(std::vector<std::int64_t>(k, 1)), metric,
                  Scale{});
    bool nonzero = false;
    for (std::size_t i = 0; i < n && !nonzero; ++i)
      for (std::size_t j = 0; j < k && !nonzero; ++j) nonzero = inst.distance(i, j) > 0;
    if (!nonzero) continue;
    const Ratio rho = aspect_ratio(inst);
    if (rho.num > rho.den) return inst;
  }
}

}  // namespace fenet::testing
