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

#include <sstream>
#include <unordered_map>

#include "fenet/error.hpp"
#include "fenet/generators.hpp"

namespace fenet {

namespace {

class TreeBuilder {
 public:
  std::size_t node(const std::string& name) {
    auto it = index_.find(name);
    if (it != index_.end()) return it->second;
    index_.emplace(name, nodes_.size());
    nodes_.push_back(name);
    return nodes_.size() - 1;
  }
  void edge(const std::string& u, const std::string& v, Quantity w) {
    std::size_t a = node(u);
    std::size_t b = node(v);
    edges_.push_back({a, b, w});
  }
  void demand(const std::string& id, const std::string& at, std::int64_t amount) {
    demands_.push_back({id, amount, dnode_.size()});
    dnode_.push_back(node(at));
  }
  void fc(const std::string& id, const std::string& at, std::int64_t capacity) {
    fcs_.push_back({id, capacity, fnode_.size()});
    fnode_.push_back(node(at));
  }
  Instance build(Scale scale) {
    auto m = std::make_shared<Metric>(Metric::tree(nodes_, edges_, dnode_, fnode_));
    return Instance(demands_, fcs_, std::move(m), scale);
  }

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<TreeEdge> edges_;
  std::vector<Demand> demands_;
  std::vector<Facility> fcs_;
  std::vector<std::size_t> dnode_, fnode_;
};

Instance line_instance(const std::vector<std::pair<std::string, std::pair<Quantity, std::int64_t>>>& demands,
                       const std::vector<std::pair<std::string, std::pair<Quantity, std::int64_t>>>& fcs,
                       Scale scale) {
  std::vector<Quantity> dp, fp;
  std::vector<Demand> d;
  std::vector<Facility> f;
  for (const auto& [id, v] : demands) {
    d.push_back({id, v.second, dp.size()});
    dp.push_back(v.first);
  }
  for (const auto& [id, v] : fcs) {
    f.push_back({id, v.second, fp.size()});
    fp.push_back(v.first);
  }
  auto m = std::make_shared<Metric>(Metric::line(std::move(dp), std::move(fp)));
  return Instance(std::move(d), std::move(f), std::move(m), scale);
}

}  // namespace

Instance generate_continuous_line(std::int64_t n, Scale scale) {
  if (n <= 0 || n % 2 != 0) fail(ErrorKind::InvalidArgument, "continuous line needs a positive even n");
  std::vector<std::pair<std::string, std::pair<Quantity, std::int64_t>>> d, f;
  for (std::int64_t i = 0; i < n; ++i)
    d.push_back({"d" + std::to_string(i), {quantize_ratio(2 * i + 1, 2 * n, scale), 1}});
  f.push_back({"f1", {0, n / 2}});
  f.push_back({"f2", {quantize_ratio(2, 5, scale), n / 2}});
  return line_instance(d, f, scale);
}

Regionalization continuous_line_split(const Instance& inst, Quantity cut) {
  if (inst.metric().kind() != Metric::Kind::Line || inst.num_fcs() != 2)
    fail(ErrorKind::InvalidArgument, "expected the two-FC line instance");
  Regionalization reg;
  reg.parts.resize(2);
  reg.parts[0].fcs = {0};
  reg.parts[1].fcs = {1};
  for (std::size_t i = 0; i < inst.num_demands(); ++i) {
    Quantity x = inst.metric().demand_coords(inst.demands()[i].site)[0];
    reg.parts[x <= cut ? 0 : 1].demands.push_back(i);
  }
  return reg;
}

LineLb generate_line_lb(int k, std::int64_t dprime, Quantity L, Scale scale) {
  if (k < 2) fail(ErrorKind::InvalidArgument, "line-lb needs k >= 2");
  if (dprime < 1) fail(ErrorKind::InvalidArgument, "line-lb needs D' >= 1");
  if (L < 0) fail(ErrorKind::InvalidArgument, "line-lb needs L >= 0");
  const Quantity u = scale.factor();
  std::vector<std::pair<std::string, std::pair<Quantity, std::int64_t>>> d, f;
  for (int s = 1; s <= k; ++s) {
    d.push_back({"i" + std::to_string(s), {(s - 1) * u, s == 1 ? dprime : 1}});
    Quantity at = s < k ? s * u : checked_add(k * u, L);
    f.push_back({"j" + std::to_string(s), {at, s == 1 ? dprime : 1}});
  }
  LineLb out{line_instance(d, f, scale), {}};
  for (int s = 0; s < k; ++s) {
    Region r;
    r.demands = {static_cast<std::size_t>(s)};
    r.fcs = {static_cast<std::size_t>(s)};
    out.k_regions.parts.push_back(std::move(r));
  }
  return out;
}

LineLbClosedForm line_lb_closed_form(int k, std::int64_t dprime, Quantity L, Scale scale) {
  const Quantity u = scale.factor();
  const Quantity km1 = k - 1;
  LineLbClosedForm c;
  // D'(L + k) + (k-1)(L + 1) + (k-1)(k-2)/2
  c.one_region = checked_add(checked_add(checked_mul(dprime, checked_add(L, k * u)),
                                         checked_mul(km1, checked_add(L, u))),
                             km1 * (k - 2) / 2 * u);
  // D' + k - 1 + L
  c.k_region = checked_add((dprime + km1) * u, L);
  for (int s = 1; s <= k; ++s) c.backlogs.push_back(s == k ? 0 : checked_add(L, (k - s) * u));
  return c;
}

Partitioned generate_line_noncontig(Scale scale) {
  const Quantity u = scale.factor();
  Instance inst = line_instance({{"d1", {0, 1}}, {"d2", {u, 1}}, {"d3", {3 * u, 1}}},
                                {{"f1", {0, 1}}, {"f2", {3 * u, 1}}, {"f3", {6 * u, 1}}}, scale);
  return Partitioned{std::move(inst), {{0}, {1, 2}}};
}

Partitioned generate_tree2(Quantity L, Quantity eps, Scale scale) {
  if (!(eps < L)) fail(ErrorKind::InvalidArgument, "tree2 needs eps < L");
  TreeBuilder t;
  for (int v = 1; v <= 10; ++v) t.node("n" + std::to_string(v));
  const int edges[9][3] = {{2, 1, 0}, {3, 1, 0}, {4, 3, 0}, {5, 3, 0}, {6, 1, 0},
                           {7, 6, 1}, {8, 4, 0}, {9, 2, 0}, {10, 8, 1}};
  for (const auto& e : edges)
    t.edge("n" + std::to_string(e[0]), "n" + std::to_string(e[1]), e[2] ? L : eps);
  for (int v : {9, 3, 8, 1}) t.demand("d" + std::to_string(v), "n" + std::to_string(v), 1);
  for (int v : {5, 2, 10, 7}) t.fc("f" + std::to_string(v), "n" + std::to_string(v), 1);
  return Partitioned{t.build(scale), {{0, 3}, {1, 2}}};
}

TreeFamily generate_tree_r(int r, Quantity L, Quantity eps, Scale scale) {
  if (r < 2) fail(ErrorKind::InvalidArgument, "tree-r needs r >= 2");
  if (!(eps < L)) fail(ErrorKind::InvalidArgument, "tree-r needs eps < L");
  TreeBuilder t;
  auto hub = [](int m) { return "s" + std::to_string(m < 2 ? 0 : m); };
  auto tag = [](int m, int s) { return std::to_string(m) + "_" + std::to_string(s); };
  t.node(hub(0));
  for (int m = 2; m < r; ++m) t.edge(hub(m - 1), hub(m), eps);
  std::vector<std::size_t> zs, arm_b0;
  std::vector<std::vector<std::size_t>> bs(static_cast<std::size_t>(r));
  TreeFamily out{Instance({}, {}, std::make_shared<Metric>(Metric::line({}, {})), scale), {}, {}, {}};
  out.contiguous.resize(static_cast<std::size_t>(r));
  out.noncontiguous.resize(static_cast<std::size_t>(r));
  std::size_t nd = 0, nf = 0;
  for (int m = 0; m < r; ++m) {
    auto mu = static_cast<std::size_t>(m);
    t.demand("y" + std::to_string(m), hub(m), 1);
    out.contiguous[mu].push_back(nd);
    out.noncontiguous[0].push_back(nd);
    ++nd;
    t.edge(hub(m), "z" + std::to_string(m), L);
    t.fc("z" + std::to_string(m), "z" + std::to_string(m), 1);
    zs.push_back(nf++);
    std::string prev = hub(m);
    for (int s = 0; s + 1 < r; ++s) {
      std::string b = "b" + tag(m, s), a = "a" + tag(m, s);
      t.edge(prev, b, eps);
      t.edge(b, a, eps);
      t.fc(b, b, 1);
      bs[mu].push_back(nf++);
      t.demand(a, a, 1);
      out.contiguous[mu].push_back(nd);
      out.noncontiguous[static_cast<std::size_t>(s) + 1].push_back(nd);
      ++nd;
      prev = a;
    }
  }
  out.instance = t.build(scale);
  for (int m = 0; m < r; ++m) {
    auto mu = static_cast<std::size_t>(m);
    Region p;
    p.demands = out.contiguous[mu];
    if (m == 0) {
      p.fcs = zs;
    } else {
      p.fcs = bs[mu];
      p.fcs.push_back(bs[0][mu - 1]);
    }
    out.alternate.parts.push_back(std::move(p));
  }
  return out;
}

bool FigureCheck::ok() const {
  for (const auto& v : values)
    if (v.expected != v.actual) return false;
  return !values.empty();
}

std::string FigureCheck::report(Scale scale) const {
  std::ostringstream os;
  os << figure << ": " << (ok() ? "match" : "MISMATCH") << "\n";
  for (const auto& v : values)
    os << "  " << v.label << ": expected " << format_decimal(v.expected, scale) << ", solver "
       << format_decimal(v.actual, scale) << (v.expected == v.actual ? "" : "  <-- mismatch") << "\n";
  for (const auto& n : notes) os << "  note: " << n << "\n";
  return os.str();
}

FigureCheck check_line_noncontig(Scale scale) {
  const Quantity u = scale.factor();
  Partitioned p = generate_line_noncontig(scale);
  FigureCheck c{"line-non-contig", {}, {}};
  Assignment x = min_cost_assignment(p.instance);
  auto global = solve_regionalized(p.instance, grouping_from_assignment(p.instance, p.demand_parts, x));
  c.values.push_back({"grouping by global min-cost assignment", 8 * u, global.total_delay});
  // the caption's 8 must not depend on which optimal assignment is used
  for (const auto& alt : all_min_cost_assignments(p.instance)) {
    auto s = solve_regionalized(p.instance, grouping_from_assignment(p.instance, p.demand_parts, alt));
    if (s.total_delay != global.total_delay) {
      c.values.push_back({"grouping by an alternative optimal assignment", 8 * u, s.total_delay});
      break;
    }
  }
  auto best = search_best_fc_grouping(p.instance, p.demand_parts);
  c.values.push_back({"best FC grouping", 7 * u, best.total_delay});
  c.notes.push_back("min-cost assignment cost " + format_decimal(x.cost, scale) +
                    (x.cost < 7 * u ? " (< 7)" : " (NOT < 7)"));
  if (!(x.cost < 7 * u)) c.values.push_back({"min cost below 7", 7 * u - 1, x.cost});
  return c;
}

FigureCheck check_tree2(Quantity L, Quantity eps, Scale scale) {
  Partitioned p = generate_tree2(L, eps, scale);
  FigureCheck c{"tree2-2-parts", {}, {}};
  Assignment x = min_cost_assignment(p.instance);
  auto global = solve_regionalized(p.instance, grouping_from_assignment(p.instance, p.demand_parts, x));
  c.values.push_back({"contiguous parts, global grouping (4L)", 4 * L, global.total_delay});
  auto best = search_best_fc_grouping(p.instance, p.demand_parts);
  c.values.push_back({"contiguous parts, best grouping (2L+6eps)", 2 * L + 6 * eps, best.total_delay});
  return c;
}

FigureCheck check_tree_r3(Quantity L, Quantity eps, Scale scale) {
  TreeFamily t = generate_tree_r(3, L, eps, scale);
  FigureCheck c{"trees-r-parts (r=3)", {}, {}};
  Assignment x = min_cost_assignment(t.instance);
  auto cg = solve_regionalized(t.instance, grouping_from_assignment(t.instance, t.contiguous, x));
  c.values.push_back({"contiguous, global grouping (9L)", 9 * L, cg.total_delay});
  auto best = search_best_fc_grouping(t.instance, t.contiguous);
  c.values.push_back({"contiguous, best grouping (3L+24eps)", 3 * L + 24 * eps, best.total_delay});
  auto alt = solve_regionalized(t.instance, t.alternate);
  c.values.push_back({"contiguous, alternate grouping (3L+24eps)", 3 * L + 24 * eps, alt.total_delay});
  auto ng = solve_regionalized(t.instance, grouping_from_assignment(t.instance, t.noncontiguous, x));
  c.values.push_back({"noncontiguous, global grouping (3L+6eps)", 3 * L + 6 * eps, ng.total_delay});
  return c;
}

}  // namespace fenet
