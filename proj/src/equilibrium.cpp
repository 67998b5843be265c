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
#include <deque>
#include <numeric>

#include "fenet/equilibrium.hpp"
#include "fenet/error.hpp"

namespace fenet {

namespace {

constexpr Quantity kInf = std::numeric_limits<Quantity>::max() / 4;

EquilibriumSolution solve_fixed(const Instance& inst, const Assignment& x) {
  SplitInstance split = split_demands(inst, x);
  const Instance& si = split.instance;
  const std::size_t k = inst.num_fcs();
  const std::size_t m = si.num_demands();
  const CostMatrix& c = si.costs();

  // vertices: 0 root, 1..k FCs, k+1..k+m split demands
  const std::size_t V = 1 + k + m;
  std::vector<std::vector<std::size_t>> served(k);
  for (std::size_t p = 0; p < m; ++p)
    if (split.assigned_fc[p] != kNone) served[split.assigned_fc[p]].push_back(p);

  std::vector<Quantity> dist(V, kInf);
  std::vector<std::size_t> enqueued(V, 0);
  std::vector<char> queued(V, 0);
  std::deque<std::size_t> fifo;
  auto push = [&](std::size_t v) {
    if (queued[v]) return;
    if (++enqueued[v] > V)
      fail(ErrorKind::Invariant,
           "negative cycle in residual graph: the assignment is not minimum cost");
    queued[v] = 1;
    fifo.push_back(v);
  };
  dist[0] = 0;
  push(0);
  while (!fifo.empty()) {
    std::size_t u = fifo.front();
    fifo.pop_front();
    queued[u] = 0;
    auto relax = [&](std::size_t v, Quantity w) {
      if (dist[u] + w < dist[v]) {
        dist[v] = dist[u] + w;
        push(v);
      }
    };
    if (u == 0) {
      for (std::size_t j = 0; j < k; ++j) relax(1 + j, 0);
    } else if (u <= k) {
      std::size_t j = u - 1;
      for (std::size_t p : served[j]) relax(1 + k + p, -c(p, j));
    } else {
      std::size_t p = u - 1 - k;
      for (std::size_t j = 0; j < k; ++j)
        if (j != split.assigned_fc[p]) relax(1 + j, c(p, j));
    }
  }

  EquilibriumSolution sol;
  sol.assignment = x;
  sol.backlog.resize(k);
  for (std::size_t j = 0; j < k; ++j) sol.backlog[j] = -dist[1 + j];

  const std::size_t n = inst.num_demands();
  sol.delay.assign(n, 0);
  std::vector<char> set(n, 0);
  for (std::size_t p = 0; p < m; ++p) {
    std::size_t i = split.origin[p];
    Quantity d;
    if (split.assigned_fc[p] == kNone) {
      d = kInf;
      for (std::size_t j = 0; j < k; ++j) d = std::min(d, c(p, j) + sol.backlog[j]);
      if (k == 0) d = 0;
    } else {
      if (dist[1 + k + p] >= kInf)
        fail(ErrorKind::Invariant, "split demand unreachable in residual graph");
      d = -dist[1 + k + p];
    }
    if (set[i] && sol.delay[i] != d)
      fail(ErrorKind::Invariant, "split parts of demand '" + inst.demands()[i].id +
                                     "' received different delays");
    sol.delay[i] = d;
    set[i] = 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    sol.total_delay = checked_add(sol.total_delay, checked_mul(inst.demands()[i].amount, sol.delay[i]));
  return sol;
}

}  // namespace

EquilibriumSolution min_delay_equilibrium(const Instance& inst) {
  return solve_fixed(inst, min_cost_assignment(inst));
}

EquilibriumSolution equilibrium_delay_of(const Instance& inst, const Assignment& x) {
  auto bad = assignment_violations(inst, x);
  if (!bad.empty()) fail(ErrorKind::InvalidArgument, "infeasible assignment: " + bad.front());
  Quantity cost = assignment_cost(inst, x.flows);
  Quantity opt = min_cost_assignment(inst).cost;
  if (cost != opt)
    fail(ErrorKind::NotOptimal, "assignment cost " + format_decimal(cost, inst.scale()) +
                                    " exceeds the minimum " + format_decimal(opt, inst.scale()));
  Assignment fixed = x;
  fixed.cost = cost;
  return solve_fixed(inst, fixed);
}

Verdict verify_equilibrium(const Instance& inst, const EquilibriumSolution& sol) {
  Verdict v;
  auto& out = v.violations;
  const std::size_t n = inst.num_demands();
  const std::size_t k = inst.num_fcs();
  if (sol.backlog.size() != k || sol.delay.size() != n) {
    out.push_back("solution shape does not match the instance");
    return v;
  }
  for (auto& s : assignment_violations(inst, sol.assignment)) out.push_back(s);
  if (!out.empty()) return v;
  const Scale sc = inst.scale();
  const CostMatrix& c = inst.costs();
  auto load = fc_loads(inst, sol.assignment);

  for (std::size_t j = 0; j < k; ++j) {
    if (sol.backlog[j] < 0) out.push_back("negative backlog at " + inst.fcs()[j].id);
    if (load[j] < inst.fcs()[j].capacity && sol.backlog[j] != 0)
      out.push_back("slack FC " + inst.fcs()[j].id + " has nonzero backlog " +
                    format_decimal(sol.backlog[j], sc));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (k == 0) break;
    Quantity best = kInf;
    for (std::size_t j = 0; j < k; ++j) {
      Quantity through = c(i, j) + sol.backlog[j];
      best = std::min(best, through);
      if (sol.delay[i] > through)
        out.push_back("dual infeasible: delay of " + inst.demands()[i].id + " exceeds l + backlog via " +
                      inst.fcs()[j].id);
    }
    if (sol.delay[i] != best)
      out.push_back("delay of " + inst.demands()[i].id + " is " + format_decimal(sol.delay[i], sc) +
                    ", expected min_j(l_ij + backlog_j) = " + format_decimal(best, sc));
  }
  for (const auto& f : sol.assignment.flows) {
    if (f.amount <= 0) continue;
    Quantity through = c(f.demand, f.fc) + sol.backlog[f.fc];
    if (through != sol.delay[f.demand])
      out.push_back("support outside argmin: " + inst.demands()[f.demand].id + " -> " +
                    inst.fcs()[f.fc].id);
  }
  Quantity total = 0;
  for (std::size_t i = 0; i < n; ++i)
    total = checked_add(total, checked_mul(inst.demands()[i].amount, sol.delay[i]));
  if (total != sol.total_delay)
    out.push_back("total delay " + format_decimal(sol.total_delay, sc) + " != sum D_i delay_i = " +
                  format_decimal(total, sc));
  Quantity cost = assignment_cost(inst, sol.assignment.flows);
  Quantity opt = min_cost_assignment(inst).cost;
  if (cost != opt)
    out.push_back("assignment cost " + format_decimal(cost, sc) + " is not minimum (" +
                  format_decimal(opt, sc) + ")");
  return v;
}

namespace {

// Tiny dense max-flow used by the oracle.
class SmallFlow {
 public:
  explicit SmallFlow(std::size_t n) : n_(n), cap_(n * n, 0) {}
  std::int64_t& cap(std::size_t u, std::size_t v) { return cap_[u * n_ + v]; }

  std::int64_t augment(std::size_t s, std::size_t t) {
    std::int64_t total = 0;
    std::vector<std::size_t> prev(n_);
    while (true) {
      std::fill(prev.begin(), prev.end(), kNone);
      prev[s] = s;
      std::vector<std::size_t> q{s};
      for (std::size_t h = 0; h < q.size() && prev[t] == kNone; ++h) {
        std::size_t u = q[h];
        for (std::size_t v = 0; v < n_; ++v)
          if (prev[v] == kNone && cap(u, v) > 0) {
            prev[v] = u;
            q.push_back(v);
          }
      }
      if (prev[t] == kNone) return total;
      std::int64_t push = std::numeric_limits<std::int64_t>::max();
      for (std::size_t v = t; v != s; v = prev[v]) push = std::min(push, cap(prev[v], v));
      for (std::size_t v = t; v != s; v = prev[v]) {
        cap(prev[v], v) -= push;
        cap(v, prev[v]) += push;
      }
      total += push;
    }
  }

 private:
  std::size_t n_;
  std::vector<std::int64_t> cap_;
};

}  // namespace

EquilibriumSolution brute_force_min_delay(const Instance& inst, OracleStats* stats) {
  if (inst.total_demand() > 8 || inst.num_fcs() > 3)
    fail(ErrorKind::Bounds, "min-delay oracle limited to total demand <= 8 and at most 3 FCs");
  const std::size_t k = inst.num_fcs();
  const CostMatrix& c = inst.costs();
  std::vector<std::size_t> live;
  for (std::size_t i = 0; i < inst.num_demands(); ++i)
    if (inst.demands()[i].amount > 0) live.push_back(i);
  const std::size_t n = inst.num_demands();
  const std::size_t m = live.size();

  Quantity g = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) g = std::gcd(g, c(i, j));
  if (g == 0) g = 1;
  const Quantity bound = c.max() * inst.total_demand();
  const Quantity steps = bound / g;

  OracleStats local;
  local.delay_floor.assign(n, kInf);
  bool found = false;
  EquilibriumSolution best;

  std::vector<Quantity> beta(k, 0);
  std::vector<Quantity> delta(n);
  const std::size_t S = 0, T = m + k + 1;
  auto try_point = [&] {
    ++local.grid_points;
    for (std::size_t i = 0; i < n; ++i) {
      Quantity d = kInf;
      for (std::size_t j = 0; j < k; ++j) d = std::min(d, c(i, j) + beta[j]);
      delta[i] = k == 0 ? 0 : d;
    }
    SmallFlow fl(m + k + 2);
    for (std::size_t a = 0; a < m; ++a) {
      std::size_t i = live[a];
      fl.cap(S, 1 + a) = inst.demands()[i].amount;
      for (std::size_t j = 0; j < k; ++j)
        if (c(i, j) + beta[j] == delta[i]) fl.cap(1 + a, 1 + m + j) = inst.total_demand();
    }
    // saturate positive-backlog FCs first; later augmentations never undo it
    std::int64_t must = 0;
    for (std::size_t j = 0; j < k; ++j)
      if (beta[j] > 0) {
        fl.cap(1 + m + j, T) = inst.fcs()[j].capacity;
        must += inst.fcs()[j].capacity;
      }
    std::int64_t got = fl.augment(S, T);
    if (got != must) return;
    for (std::size_t j = 0; j < k; ++j)
      if (beta[j] == 0) fl.cap(1 + m + j, T) = inst.fcs()[j].capacity;
    got += fl.augment(S, T);
    if (got != inst.total_demand()) return;

    ++local.equilibria;
    Quantity total = 0;
    for (std::size_t i = 0; i < n; ++i) {
      total += inst.demands()[i].amount * delta[i];
      local.delay_floor[i] = std::min(local.delay_floor[i], delta[i]);
    }
    if (found && total >= best.total_delay) return;
    std::vector<Flow> flows;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t j = 0; j < k; ++j) {
        // residual on the reverse arc is the flow pushed
        std::int64_t f = fl.cap(1 + m + j, 1 + a);
        if (f > 0) flows.push_back({live[a], j, f});
      }
    found = true;
    best.assignment = make_assignment(inst, std::move(flows));
    best.backlog = beta;
    best.delay = delta;
    best.total_delay = total;
  };

  auto rec = [&](auto&& self, std::size_t j) -> void {
    if (j == k) {
      try_point();
      return;
    }
    for (Quantity s = 0; s <= steps; ++s) {
      beta[j] = s * g;
      self(self, j + 1);
    }
  };
  rec(rec, 0);
  if (!found) fail(ErrorKind::Invariant, "oracle found no equilibrium on the backlog grid");
  if (stats) *stats = std::move(local);
  return best;
}

TightEdgeGraph tight_edges(const Instance& inst, const EquilibriumSolution& sol) {
  TightEdgeGraph g;
  const CostMatrix& c = inst.costs();
  for (std::size_t i = 0; i < inst.num_demands(); ++i)
    for (std::size_t j = 0; j < inst.num_fcs(); ++j)
      if (sol.delay[i] == c(i, j) + sol.backlog[j]) g.edges.push_back({i, j});
  return g;
}

std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>>
tight_components(const Instance& inst, const TightEdgeGraph& graph) {
  const std::size_t n = inst.num_demands();
  const std::size_t k = inst.num_fcs();
  std::vector<std::size_t> parent(n + k);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (auto [i, j] : graph.edges) {
    std::size_t a = find(i), b = find(n + j);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::size_t> slot(n + k, kNone);
  std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> comps;
  for (std::size_t v = 0; v < n + k; ++v) {
    std::size_t r = find(v);
    if (slot[r] == kNone) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    if (v < n) comps[slot[r]].first.push_back(v);
    else comps[slot[r]].second.push_back(v - n);
  }
  return comps;
}

bool components_have_zero_backlog(const Instance& inst, const EquilibriumSolution& sol) {
  if (inst.num_fcs() == 0) return true;
  for (const auto& comp : tight_components(inst, tight_edges(inst, sol))) {
    bool zero = false;
    for (std::size_t j : comp.second) zero = zero || sol.backlog[j] == 0;
    if (!zero) return false;
  }
  return true;
}

Quantity dual_objective(const Instance& inst, const EquilibriumSolution& sol) {
  Quantity v = 0;
  for (std::size_t i = 0; i < inst.num_demands(); ++i)
    v = checked_add(v, checked_mul(inst.demands()[i].amount, sol.delay[i]));
  for (std::size_t j = 0; j < inst.num_fcs(); ++j)
    v = checked_add(v, -checked_mul(inst.fcs()[j].capacity, sol.backlog[j]));
  return v;
}

}  // namespace fenet
