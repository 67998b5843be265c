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
#include <queue>
#include <tuple>

#include "fenet/assignment.hpp"
#include "fenet/error.hpp"

namespace fenet {

namespace {

constexpr Quantity kInf = std::numeric_limits<Quantity>::max() / 4;

}  // namespace

Quantity assignment_cost(const Instance& inst, const std::vector<Flow>& flows) {
  Quantity c = 0;
  for (const auto& f : flows) c = checked_add(c, checked_mul(f.amount, inst.distance(f.demand, f.fc)));
  return c;
}

std::vector<std::int64_t> fc_loads(const Instance& inst, const Assignment& x) {
  std::vector<std::int64_t> load(inst.num_fcs(), 0);
  for (const auto& f : x.flows) load[f.fc] += f.amount;
  return load;
}

std::vector<std::string> assignment_violations(const Instance& inst, const Assignment& x) {
  std::vector<std::string> out;
  std::vector<std::int64_t> shipped(inst.num_demands(), 0);
  std::vector<std::int64_t> load(inst.num_fcs(), 0);
  for (const auto& f : x.flows) {
    if (f.demand >= inst.num_demands() || f.fc >= inst.num_fcs()) {
      out.push_back("flow references an index out of range");
      continue;
    }
    if (f.amount < 0)
      out.push_back("negative flow " + inst.demands()[f.demand].id + "->" + inst.fcs()[f.fc].id);
    shipped[f.demand] += f.amount;
    load[f.fc] += f.amount;
  }
  for (std::size_t i = 0; i < inst.num_demands(); ++i)
    if (shipped[i] != inst.demands()[i].amount)
      out.push_back("demand " + inst.demands()[i].id + " ships " + std::to_string(shipped[i]) +
                    " of " + std::to_string(inst.demands()[i].amount));
  for (std::size_t j = 0; j < inst.num_fcs(); ++j)
    if (load[j] > inst.fcs()[j].capacity)
      out.push_back("capacity exceeded at " + inst.fcs()[j].id + ": " + std::to_string(load[j]) +
                    " > " + std::to_string(inst.fcs()[j].capacity));
  return out;
}

Assignment make_assignment(const Instance& inst, std::vector<Flow> flows) {
  std::sort(flows.begin(), flows.end(), [](const Flow& a, const Flow& b) {
    return std::tie(a.demand, a.fc) < std::tie(b.demand, b.fc);
  });
  std::vector<Flow> merged;
  for (const auto& f : flows) {
    if (!merged.empty() && merged.back().demand == f.demand && merged.back().fc == f.fc)
      merged.back().amount += f.amount;
    else
      merged.push_back(f);
  }
  std::erase_if(merged, [](const Flow& f) { return f.amount == 0; });
  Assignment x;
  x.cost = assignment_cost(inst, merged);
  x.flows = std::move(merged);
  return x;
}

Assignment min_cost_assignment(const Instance& inst) {
  const std::size_t n = inst.num_demands();
  const std::size_t k = inst.num_fcs();
  if (inst.total_demand() > inst.total_capacity())
    fail(ErrorKind::Infeasible, "supply < demand");
  const CostMatrix& c = inst.costs();

  // vertices: 0 = source, 1..n demands, n+1..n+k FCs, n+k+1 sink
  const std::size_t S = 0;
  const std::size_t T = n + k + 1;
  const std::size_t V = n + k + 2;
  auto dv = [](std::size_t i) { return i + 1; };
  auto fv = [n](std::size_t j) { return n + 1 + j; };

  std::vector<std::int64_t> rem(n), spare(k);
  for (std::size_t i = 0; i < n; ++i) rem[i] = inst.demands()[i].amount;
  for (std::size_t j = 0; j < k; ++j) spare[j] = inst.fcs()[j].capacity;
  std::vector<std::int64_t> x(n * k, 0);
  std::vector<Quantity> pi(V, 0);
  std::vector<Quantity> dist(V);
  std::vector<std::size_t> pred(V);
  std::vector<char> done(V);
  std::int64_t left = inst.total_demand();

  using Item = std::pair<Quantity, std::size_t>;
  while (left > 0) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(pred.begin(), pred.end(), kNone);
    std::fill(done.begin(), done.end(), 0);
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[S] = 0;
    heap.push({0, S});
    auto relax = [&](std::size_t u, std::size_t v, Quantity cost) {
      Quantity nd = dist[u] + cost + pi[u] - pi[v];
      if (nd < dist[v]) {
        dist[v] = nd;
        pred[v] = u;
        heap.push({nd, v});
      }
    };
    while (!heap.empty()) {
      auto [d, u] = heap.top();
      heap.pop();
      if (done[u] || d != dist[u]) continue;
      done[u] = 1;
      if (u == S) {
        for (std::size_t i = 0; i < n; ++i)
          if (rem[i] > 0) relax(S, dv(i), 0);
      } else if (u <= n) {
        std::size_t i = u - 1;
        for (std::size_t j = 0; j < k; ++j) relax(u, fv(j), c(i, j));
      } else if (u < T) {
        std::size_t j = u - n - 1;
        for (std::size_t i = 0; i < n; ++i)
          if (x[i * k + j] > 0) relax(u, dv(i), -c(i, j));
        if (spare[j] > 0) relax(u, T, 0);
      }
    }
    if (dist[T] >= kInf) fail(ErrorKind::Infeasible, "no augmenting path: supply < demand");
    for (std::size_t v = 0; v < V; ++v) pi[v] += std::min(dist[v], dist[T]);

    // bottleneck along the path
    std::int64_t push = left;
    for (std::size_t v = T; v != S; v = pred[v]) {
      std::size_t u = pred[v];
      if (v == T) push = std::min(push, spare[u - n - 1]);
      else if (u == S) push = std::min(push, rem[v - 1]);
      else if (u > n) push = std::min(push, x[(v - 1) * k + (u - n - 1)]);
    }
    for (std::size_t v = T; v != S; v = pred[v]) {
      std::size_t u = pred[v];
      if (v == T) spare[u - n - 1] -= push;
      else if (u == S) rem[v - 1] -= push;
      else if (u <= n) x[(u - 1) * k + (v - n - 1)] += push;
      else x[(v - 1) * k + (u - n - 1)] -= push;
    }
    left -= push;
  }

  std::vector<Flow> flows;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j)
      if (x[i * k + j] > 0) flows.push_back({i, j, x[i * k + j]});
  Assignment out;
  out.cost = assignment_cost(inst, flows);
  out.flows = std::move(flows);
  return out;
}

namespace {

void check_oracle_bounds(const Instance& inst) {
  if (inst.total_demand() > 12 || inst.num_fcs() > 4)
    fail(ErrorKind::Bounds, "brute force limited to total demand <= 12 and at most 4 FCs");
}

// Calls visit(flows) for every integral feasible assignment.
template <class Visit>
void enumerate_assignments(const Instance& inst, Visit&& visit) {
  const std::size_t n = inst.num_demands();
  const std::size_t k = inst.num_fcs();
  std::vector<std::int64_t> spare(k);
  for (std::size_t j = 0; j < k; ++j) spare[j] = inst.fcs()[j].capacity;
  std::vector<std::int64_t> x(n * k, 0);

  // rec(i, j, left): distribute the remaining `left` units of demand i
  // starting at FC j
  auto rec = [&](auto&& self, std::size_t i, std::size_t j, std::int64_t left) -> void {
    if (i == n) {
      std::vector<Flow> flows;
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < k; ++b)
          if (x[a * k + b] > 0) flows.push_back({a, b, x[a * k + b]});
      visit(std::move(flows));
      return;
    }
    if (left == 0) {
      std::size_t ni = i + 1;
      self(self, ni, 0, ni < n ? inst.demands()[ni].amount : 0);
      return;
    }
    if (j == k) return;
    std::int64_t hi = std::min(left, spare[j]);
    for (std::int64_t a = hi; a >= 0; --a) {
      x[i * k + j] = a;
      spare[j] -= a;
      self(self, i, j + 1, left - a);
      spare[j] += a;
    }
    x[i * k + j] = 0;
  };
  rec(rec, 0, 0, n > 0 ? inst.demands()[0].amount : 0);
}

}  // namespace

Assignment brute_force_min_cost(const Instance& inst) {
  check_oracle_bounds(inst);
  bool found = false;
  Assignment best;
  enumerate_assignments(inst, [&](std::vector<Flow> flows) {
    Quantity cost = assignment_cost(inst, flows);
    if (!found || cost < best.cost) {
      found = true;
      best.cost = cost;
      best.flows = std::move(flows);
    }
  });
  if (!found) fail(ErrorKind::Infeasible, "no feasible assignment");
  return best;
}

std::vector<Assignment> all_min_cost_assignments(const Instance& inst, std::size_t limit) {
  check_oracle_bounds(inst);
  Quantity best = brute_force_min_cost(inst).cost;
  std::vector<Assignment> out;
  enumerate_assignments(inst, [&](std::vector<Flow> flows) {
    if (out.size() >= limit) return;
    Quantity cost = assignment_cost(inst, flows);
    if (cost == best) out.push_back({std::move(flows), cost});
  });
  return out;
}

SplitInstance split_demands(const Instance& inst, const Assignment& x) {
  auto bad = assignment_violations(inst, x);
  if (!bad.empty()) fail(ErrorKind::InvalidArgument, "split_demands: infeasible assignment: " + bad.front());

  std::vector<std::vector<Flow>> by_demand(inst.num_demands());
  for (const auto& f : x.flows)
    if (f.amount > 0) by_demand[f.demand].push_back(f);

  std::vector<Demand> parts;
  std::vector<std::size_t> origin, assigned;
  std::vector<Flow> flows;
  for (std::size_t i = 0; i < inst.num_demands(); ++i) {
    const Demand& d = inst.demands()[i];
    auto& fl = by_demand[i];
    std::sort(fl.begin(), fl.end(), [](const Flow& a, const Flow& b) { return a.fc < b.fc; });
    if (fl.empty()) {
      parts.push_back(d);
      origin.push_back(i);
      assigned.push_back(kNone);
      continue;
    }
    for (const auto& f : fl) {
      Demand p = d;
      p.amount = f.amount;
      if (fl.size() > 1) p.id = d.id + "/" + inst.fcs()[f.fc].id;
      flows.push_back({parts.size(), f.fc, f.amount});
      parts.push_back(std::move(p));
      origin.push_back(i);
      assigned.push_back(f.fc);
    }
  }
  Instance split = inst.with_demands(std::move(parts));
  Assignment induced;
  induced.cost = assignment_cost(split, flows);
  induced.flows = std::move(flows);
  return SplitInstance{std::move(split), std::move(origin), std::move(assigned), std::move(induced)};
}

}  // namespace fenet
