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
#include <limits>

#include "fenet/dynamics.hpp"
#include "fenet/error.hpp"

namespace fenet {

std::uint64_t fc_fingerprint(const Instance& inst) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&](unsigned char b) {
    h ^= b;
    h *= 1099511628211ull;
  };
  for (const auto& f : inst.fcs()) {
    for (char ch : f.id) mix(static_cast<unsigned char>(ch));
    mix(0);
    for (int s = 0; s < 64; s += 8) mix(static_cast<unsigned char>(static_cast<std::uint64_t>(f.capacity) >> s));
  }
  return h;
}

DynamicsTrace simulate(const Instance& inst, const SimulationConfig& cfg) {
  if (cfg.dt <= 0) fail(ErrorKind::InvalidArgument, "time step must be positive");
  if (cfg.steps < 0) fail(ErrorKind::InvalidArgument, "step count must be nonnegative");
  if (cfg.sample_every < 1) fail(ErrorKind::InvalidArgument, "sample interval must be positive");
  const std::size_t n = inst.num_demands();
  const std::size_t k = inst.num_fcs();
  const CostMatrix& c = inst.costs();

  std::vector<std::vector<std::pair<std::size_t, std::int64_t>>> fixed(n);
  if (cfg.routing == Routing::Fixed) {
    if (!cfg.fixed) fail(ErrorKind::InvalidArgument, "fixed routing needs an assignment");
    auto bad = assignment_violations(inst, *cfg.fixed);
    if (!bad.empty()) fail(ErrorKind::InvalidArgument, "fixed routing: " + bad.front());
    for (const auto& f : cfg.fixed->flows) fixed[f.demand].push_back({f.fc, checked_mul(f.amount, cfg.dt)});
  }

  DynamicsTrace tr;
  tr.scale = inst.scale();
  tr.dt = cfg.dt;
  tr.fingerprint = fc_fingerprint(inst);
  for (const auto& f : inst.fcs()) tr.fc_ids.push_back(f.id);

  std::vector<std::int64_t> q(k, 0), service(k), in(k, 0);
  std::vector<Quantity> beta(k, 0);
  if (!cfg.initial_backlog.empty()) {
    if (cfg.initial_backlog.size() != k) fail(ErrorKind::InvalidArgument, "initial backlog needs one value per FC");
    for (std::size_t j = 0; j < k; ++j) {
      if (cfg.initial_backlog[j] < 0) fail(ErrorKind::InvalidArgument, "initial backlog must be nonnegative");
      q[j] = checked_mul(cfg.initial_backlog[j], inst.fcs()[j].capacity);
    }
  }
  for (std::size_t j = 0; j < k; ++j) service[j] = checked_mul(inst.fcs()[j].capacity, cfg.dt);
  std::int64_t per_step = 0;
  for (const auto& d : inst.demands()) per_step = checked_add(per_step, checked_mul(d.amount, cfg.dt));
  for (std::int64_t v : q) tr.initial_total += v;

  auto refresh = [&] {
    for (std::size_t j = 0; j < k; ++j)
      beta[j] = inst.fcs()[j].capacity > 0 ? q[j] / inst.fcs()[j].capacity : 0;
  };
  auto record = [&](std::int64_t step) {
    tr.samples.push_back({step, checked_mul(step, cfg.dt), q, beta, in});
  };
  refresh();
  record(0);

  std::vector<std::size_t> arg;
  for (std::int64_t step = 1; step <= cfg.steps; ++step) {
    std::fill(in.begin(), in.end(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t amount = checked_mul(inst.demands()[i].amount, cfg.dt);
      if (amount == 0) continue;
      if (cfg.routing == Routing::Fixed) {
        for (auto [j, a] : fixed[i]) in[j] += a;
        continue;
      }
      arg.clear();
      Quantity best = std::numeric_limits<Quantity>::max();
      for (std::size_t j = 0; j < k; ++j) {
        if (inst.fcs()[j].capacity == 0) continue;
        Quantity v = c(i, j) + beta[j];
        if (v < best) {
          best = v;
          arg.clear();
        }
        if (v == best) arg.push_back(j);
      }
      if (arg.empty()) fail(ErrorKind::Infeasible, "demand with no FC of positive capacity");
      const auto m = static_cast<std::int64_t>(arg.size());
      for (std::int64_t t = 0; t < m; ++t)
        in[arg[static_cast<std::size_t>(t)]] += amount / m + (t < amount % m ? 1 : 0);
    }
    std::int64_t before = 0, after = 0, done = 0, routed = 0;
    bool clamped = false;
    for (std::size_t j = 0; j < k; ++j) {
      before += q[j];
      routed += in[j];
      std::int64_t avail = q[j] + in[j];
      std::int64_t served = std::min(avail, service[j]);
      if (served < service[j]) {
        tr.idle += service[j] - served;
        clamped = clamped || service[j] > 0;
      }
      q[j] = avail - served;
      done += served;
      after += q[j];
    }
    tr.injected += per_step;
    tr.processed += done;
    if (clamped) ++tr.clamped_steps;
    if (routed != per_step || before + per_step - done != after) ++tr.conservation_errors;
    refresh();
    if (step % cfg.sample_every == 0 || step == cfg.steps) record(step);
  }
  for (std::int64_t v : q) tr.final_total += v;
  return tr;
}

ConvergenceReport compare_to_static(const DynamicsTrace& tr, const Instance& inst,
                                    const EquilibriumSolution& sol, Quantity tolerance) {
  if (tr.fingerprint != fc_fingerprint(inst) || sol.backlog.size() != tr.fc_ids.size())
    fail(ErrorKind::InvalidArgument, "trace and solution come from different instances");
  if (tr.samples.empty()) fail(ErrorKind::InvalidArgument, "empty trace");
  if (tolerance < 0) tolerance = 2 * tr.dt;
  const double unit = static_cast<double>(tr.scale.factor());
  auto residual = [&](const DynamicsSample& s) {
    Quantity r = 0;
    for (std::size_t j = 0; j < s.backlog.size(); ++j) {
      Quantity d = s.backlog[j] - sol.backlog[j];
      r = std::max(r, d < 0 ? -d : d);
    }
    return r;
  };
  ConvergenceReport rep;
  const std::size_t m = tr.samples.size();
  std::vector<double> res(m);
  double sum = 0;
  for (std::size_t s = 0; s < m; ++s) {
    res[s] = static_cast<double>(residual(tr.samples[s])) / unit;
    sum += res[s];
  }
  rep.final_residual = residual(tr.samples.back());
  rep.mean_residual = sum / static_cast<double>(m);
  const std::size_t w = std::max<std::size_t>(1, m / 5);
  auto window_mean = [&](std::size_t from, std::size_t to) {
    double acc = 0;
    for (std::size_t s = from; s < to; ++s) acc += res[s];
    return to > from ? acc / static_cast<double>(to - from) : 0.0;
  };
  rep.tail_mean = window_mean(m - w, m);
  rep.previous_mean = m >= 2 * w ? window_mean(m - 2 * w, m - w) : rep.tail_mean;
  rep.oscillating = rep.tail_mean > static_cast<double>(tolerance) / unit &&
                    rep.tail_mean >= 0.9 * rep.previous_mean;
  rep.final_backlog = tr.samples.back().backlog;
  rep.static_backlog = sol.backlog;
  return rep;
}

}  // namespace fenet
