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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fenet/error.hpp"
#include "fenet/generators.hpp"

namespace fenet {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Portable draws on top of mt19937_64; the std distributions are not
// specified bit-for-bit across standard libraries.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double exponential(double mean) { return -mean * std::log(1.0 - uniform()); }
  std::int64_t below(std::int64_t n) { return static_cast<std::int64_t>(rng_() % static_cast<std::uint64_t>(n)); }

 private:
  std::mt19937_64 rng_;
};

Quantity to_grid(double v, Scale scale) {
  // coordinates are kept to three decimals so they stay exact at any scale >= 1e3
  const int keep = std::min(3, scale.exponent);
  double unit = std::pow(10.0, keep);
  auto whole = static_cast<Quantity>(std::llround(v * unit));
  for (int e = keep; e < scale.exponent; ++e) whole *= 10;
  return whole;
}

}  // namespace

std::vector<std::int64_t> equal_capacities(std::int64_t total, std::size_t k) {
  if (k == 0) fail(ErrorKind::InvalidArgument, "no FCs");
  auto kk = static_cast<std::int64_t>(k);
  std::vector<std::int64_t> c(k, total / kk);
  for (std::int64_t j = 0; j < total % kk; ++j) ++c[static_cast<std::size_t>(j)];
  return c;
}

namespace {

// Adds `extra` units over the smallest decile of c: equal shares, the
// remainder round-robin in ascending order.
void top_up(std::vector<std::int64_t>& c, std::int64_t extra) {
  if (extra <= 0 || c.empty()) return;
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return c[a] < c[b]; });
  const auto decile = static_cast<std::int64_t>(std::max<std::size_t>(1, (c.size() + 9) / 10));
  for (std::int64_t t = 0; t < decile; ++t)
    c[order[static_cast<std::size_t>(t)]] += extra / decile + (t < extra % decile ? 1 : 0);
}

}  // namespace

std::vector<std::int64_t> voronoi_capacities(const Instance& inst, std::int64_t total) {
  std::vector<std::int64_t> c(inst.num_fcs(), 0);
  const CostMatrix& m = inst.costs();
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < inst.num_demands(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < inst.num_fcs(); ++j)
      if (m(i, j) < m(i, best)) best = j;
    c[best] += inst.demands()[i].amount;
    sum += inst.demands()[i].amount;
  }
  top_up(c, total - sum);
  return c;
}

std::vector<std::int64_t> mix_capacities(const std::vector<std::int64_t>& cv,
                                         const std::vector<std::int64_t>& ce, Quantity alpha,
                                         Scale scale) {
  const Quantity S = scale.factor();
  if (alpha < 0 || alpha > S) fail(ErrorKind::InvalidArgument, "alpha must be in [0, 1]");
  const std::size_t k = cv.size();
  std::vector<std::int64_t> c(k);
  std::int64_t want = 0, got = 0;
  for (std::size_t j = 0; j < k; ++j) {
    __int128 v = static_cast<__int128>(alpha) * cv[j] + static_cast<__int128>(S - alpha) * ce[j];
    c[j] = static_cast<std::int64_t>(v / S);
    want += cv[j];
    got += c[j];
  }
  top_up(c, want - got);
  return c;
}

Instance generate_synthetic_national(const SyntheticConfig& cfg, Scale scale) {
  if (cfg.n_demands < 1 || cfg.n_fcs < 1) fail(ErrorKind::InvalidArgument, "synthetic instance needs demands and FCs");
  if (cfg.clusters < 1) fail(ErrorKind::InvalidArgument, "synthetic instance needs at least one cluster");
  if (!(cfg.side > 0) || !(cfg.spread > 0)) fail(ErrorKind::InvalidArgument, "side and spread must be positive");
  Quantity alpha = parse_decimal(cfg.alpha, scale);
  if (alpha < 0 || alpha > scale.factor()) fail(ErrorKind::InvalidArgument, "alpha must be in [0, 1]");

  Draw draw(cfg.seed);
  struct Cluster {
    double x, y, w;
  };
  std::vector<Cluster> clusters;
  double wsum = 0;
  for (std::int64_t c = 0; c < cfg.clusters; ++c) {
    double margin = 0.1 * cfg.side;
    Cluster cl{margin + draw.uniform() * (cfg.side - 2 * margin), margin + draw.uniform() * (cfg.side - 2 * margin),
               0.2 + draw.uniform()};
    wsum += cl.w;
    clusters.push_back(cl);
  }
  auto clamp = [&](double v) { return std::clamp(v, 0.0, cfg.side); };

  std::vector<Quantity> dc, fc;
  std::vector<Demand> demands;
  for (std::int64_t i = 0; i < cfg.n_demands; ++i) {
    double x, y;
    std::int64_t amount;
    if (draw.uniform() < cfg.rural) {
      x = draw.uniform() * cfg.side;
      y = draw.uniform() * cfg.side;
      amount = 1 + draw.below(5);
    } else {
      double pick = draw.uniform() * wsum;
      std::size_t c = 0;
      while (c + 1 < clusters.size() && pick > clusters[c].w) pick -= clusters[c++].w;
      double rad = draw.exponential(cfg.spread);
      double ang = 2 * kPi * draw.uniform();
      x = clamp(clusters[c].x + rad * std::cos(ang));
      y = clamp(clusters[c].y + rad * std::sin(ang));
      // heavier nodes near cluster centres
      amount = 1 + static_cast<std::int64_t>(std::floor(30.0 * std::exp(-rad / cfg.spread) * draw.uniform()));
    }
    demands.push_back({"d" + std::to_string(i), amount, dc.size() / 2});
    dc.push_back(to_grid(x, scale));
    dc.push_back(to_grid(y, scale));
  }

  auto density = [&](double x, double y) {
    double d = 0;
    for (const auto& c : clusters) d += c.w * std::exp(-std::hypot(x - c.x, y - c.y) / (3 * cfg.spread));
    return d;
  };
  double peak = 0;
  for (const auto& c : clusters) peak = std::max(peak, density(c.x, c.y));
  std::vector<Facility> fcs;
  while (static_cast<std::int64_t>(fcs.size()) < cfg.n_fcs) {
    double x = draw.uniform() * cfg.side;
    double y = draw.uniform() * cfg.side;
    double keep = 0.1 + 0.9 * (1.0 - std::min(1.0, density(x, y) / peak));
    if (draw.uniform() > keep) continue;
    fcs.push_back({"f" + std::to_string(fcs.size()), 0, fc.size() / 2});
    fc.push_back(to_grid(x, scale));
    fc.push_back(to_grid(y, scale));
  }

  auto metric = std::make_shared<Metric>(Metric::euclidean(2, std::move(dc), std::move(fc)));
  std::int64_t total = 0;
  for (const auto& d : demands) total += d.amount;
  Quantity headroom = parse_decimal(cfg.headroom, scale);
  if (headroom < 0) fail(ErrorKind::InvalidArgument, "headroom must be nonnegative");
  const Quantity S = scale.factor();
  const auto supply = static_cast<std::int64_t>(
      (static_cast<__int128>(total) * (S + headroom) + S - 1) / S);
  for (auto& f : fcs) f.capacity = total;  // placeholder so the Voronoi pass is feasible
  Instance probe(demands, fcs, metric, scale);
  auto cv = voronoi_capacities(probe, supply);
  auto ce = equal_capacities(supply, fcs.size());
  auto cap = mix_capacities(cv, ce, alpha, scale);
  for (std::size_t j = 0; j < fcs.size(); ++j) fcs[j].capacity = cap[j];
  return Instance(std::move(demands), std::move(fcs), std::move(metric), scale);
}

Regionalization quadrant_regionalization(const Instance& inst, double side) {
  const Metric& m = inst.metric();
  if (m.kind() != Metric::Kind::Euclidean || m.dimension() != 2)
    fail(ErrorKind::InvalidArgument, "quadrant split needs a planar euclidean instance");
  const Quantity mid = static_cast<Quantity>(std::llround(side / 2 * static_cast<double>(inst.scale().factor())));
  auto quadrant = [&](std::span<const Quantity> p) {
    return static_cast<std::size_t>((p[0] >= mid ? 1 : 0) + (p[1] >= mid ? 2 : 0));
  };
  std::vector<std::int64_t> need(4, 0), have(4, 0);
  std::vector<std::size_t> home(inst.num_demands()), owner(inst.num_fcs());
  for (std::size_t j = 0; j < inst.num_fcs(); ++j) {
    owner[j] = quadrant(m.fc_coords(inst.fcs()[j].site));
    have[owner[j]] += inst.fcs()[j].capacity;
  }
  for (std::size_t i = 0; i < inst.num_demands(); ++i) {
    home[i] = quadrant(m.demand_coords(inst.demands()[i].site));
    need[home[i]] += inst.demands()[i].amount;
  }
  // Short quadrants hand their demand nodes closest to a foreign FC over to
  // that FC's quadrant, as long as it has room for them.
  const CostMatrix& c = inst.costs();
  for (std::size_t q = 0; q < 4; ++q) {
    while (need[q] > have[q]) {
      std::size_t bi = kNone, bo = kNone;
      Quantity best = 0;
      for (std::size_t i = 0; i < inst.num_demands(); ++i) {
        if (home[i] != q || inst.demands()[i].amount == 0) continue;
        for (std::size_t j = 0; j < inst.num_fcs(); ++j) {
          std::size_t o = owner[j];
          if (o == q || have[o] - need[o] < inst.demands()[i].amount) continue;
          if (bi == kNone || c(i, j) < best) {
            bi = i;
            bo = o;
            best = c(i, j);
          }
        }
      }
      if (bi == kNone) fail(ErrorKind::Infeasible, "quadrant split cannot be repaired to cover every quadrant");
      need[q] -= inst.demands()[bi].amount;
      need[bo] += inst.demands()[bi].amount;
      home[bi] = bo;
    }
  }
  Regionalization reg;
  reg.parts.resize(4);
  for (std::size_t i = 0; i < inst.num_demands(); ++i) reg.parts[home[i]].demands.push_back(i);
  for (std::size_t j = 0; j < inst.num_fcs(); ++j) reg.parts[owner[j]].fcs.push_back(j);
  std::erase_if(reg.parts, [](const Region& r) { return r.demands.empty() && r.fcs.empty(); });
  validate_regionalization(inst, reg);
  return reg;
}

std::vector<SweepRow> sweep_alpha(SyntheticConfig cfg, const std::vector<std::string>& alphas, Scale scale) {
  std::vector<SweepRow> rows;
  for (const auto& a : alphas) {
    cfg.alpha = a;
    Instance inst = generate_synthetic_national(cfg, scale);
    EquilibriumSolution s = min_delay_equilibrium(inst);
    SweepRow row;
    row.alpha = format_decimal(parse_decimal(a, scale), scale);
    row.delay = s.total_delay;
    row.min_cost = s.assignment.cost;
    for (Quantity b : s.backlog) row.max_backlog = std::max(row.max_backlog, b);
    rows.push_back(row);
  }
  return rows;
}

double sweep_spearman(const std::vector<SweepRow>& rows, Scale scale) {
  const std::size_t n = rows.size();
  if (n < 2) return 0.0;
  auto ranks = [n](const std::vector<double>& v) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    for (std::size_t s = 0; s < n;) {
      std::size_t e = s;
      while (e + 1 < n && v[idx[e + 1]] == v[idx[s]]) ++e;
      double avg = (static_cast<double>(s) + static_cast<double>(e)) / 2.0 + 1.0;
      for (std::size_t t = s; t <= e; ++t) r[idx[t]] = avg;
      s = e + 1;
    }
    return r;
  };
  std::vector<double> a(n), d(n);
  for (std::size_t t = 0; t < n; ++t) {
    a[t] = to_double(parse_decimal(rows[t].alpha, scale), scale);
    d[t] = static_cast<double>(rows[t].delay);
  }
  auto ra = ranks(a), rd = ranks(d);
  double ma = 0, md = 0;
  for (std::size_t t = 0; t < n; ++t) {
    ma += ra[t];
    md += rd[t];
  }
  ma /= static_cast<double>(n);
  md /= static_cast<double>(n);
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t t = 0; t < n; ++t) {
    sab += (ra[t] - ma) * (rd[t] - md);
    saa += (ra[t] - ma) * (ra[t] - ma);
    sbb += (rd[t] - md) * (rd[t] - md);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

}  // namespace fenet
