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
#include <map>

#include <json.hpp>

#include "fenet/error.hpp"
#include "fenet/regionalize.hpp"

namespace fenet {

void validate_regionalization(const Instance& inst, const Regionalization& reg) {
  std::vector<int> dseen(inst.num_demands(), 0), fseen(inst.num_fcs(), 0);
  for (std::size_t r = 0; r < reg.parts.size(); ++r) {
    const Region& p = reg.parts[r];
    std::int64_t demand = 0, supply = 0;
    for (std::size_t i : p.demands) {
      if (i >= inst.num_demands()) fail(ErrorKind::InvalidArgument, "part references an unknown demand");
      if (dseen[i]++) fail(ErrorKind::InvalidArgument, "demand '" + inst.demands()[i].id + "' is in two parts");
      demand += inst.demands()[i].amount;
    }
    for (std::size_t j : p.fcs) {
      if (j >= inst.num_fcs()) fail(ErrorKind::InvalidArgument, "part references an unknown fc");
      if (fseen[j]++) fail(ErrorKind::InvalidArgument, "fc '" + inst.fcs()[j].id + "' is in two parts");
      supply += inst.fcs()[j].capacity;
    }
    if (demand > supply)
      fail(ErrorKind::Infeasible, "region " + std::to_string(r) + " has demand " + std::to_string(demand) +
                                      " exceeding its supply " + std::to_string(supply));
    if (!p.cells.empty() && p.cells.size() != p.demands.size())
      fail(ErrorKind::InvalidArgument, "part cells do not match its demands");
  }
  for (std::size_t i = 0; i < inst.num_demands(); ++i)
    if (!dseen[i]) fail(ErrorKind::InvalidArgument, "demand '" + inst.demands()[i].id + "' is in no part");
}

std::size_t demand_region_count(const Regionalization& reg) {
  std::size_t n = 0;
  for (const auto& p : reg.parts) n += p.demands.empty() ? 0 : 1;
  return n;
}

RegionalizedSolution solve_regionalized(const Instance& inst, const Regionalization& reg) {
  validate_regionalization(inst, reg);
  RegionalizedSolution out;
  out.regionalization = reg;
  for (const auto& p : reg.parts) {
    Instance sub = inst.restricted(p.demands, p.fcs);
    EquilibriumSolution s = min_delay_equilibrium(sub);
    out.total_delay = checked_add(out.total_delay, s.total_delay);
    out.instances.push_back(std::move(sub));
    out.regions.push_back(std::move(s));
  }
  return out;
}

EquilibriumSolution flatten(const Instance& inst, const RegionalizedSolution& sol) {
  EquilibriumSolution out;
  out.backlog.assign(inst.num_fcs(), 0);
  out.delay.assign(inst.num_demands(), 0);
  std::vector<Flow> flows;
  const auto& parts = sol.regionalization.parts;
  for (std::size_t r = 0; r < parts.size(); ++r) {
    const auto& s = sol.regions[r];
    for (std::size_t a = 0; a < parts[r].demands.size(); ++a) out.delay[parts[r].demands[a]] = s.delay[a];
    for (std::size_t b = 0; b < parts[r].fcs.size(); ++b) out.backlog[parts[r].fcs[b]] = s.backlog[b];
    for (const auto& f : s.assignment.flows)
      flows.push_back({parts[r].demands[f.demand], parts[r].fcs[f.fc], f.amount});
  }
  out.assignment = make_assignment(inst, std::move(flows));
  out.total_delay = sol.total_delay;
  return out;
}

Regionalization single_region(const Instance& inst) {
  Region p;
  for (std::size_t i = 0; i < inst.num_demands(); ++i) p.demands.push_back(i);
  for (std::size_t j = 0; j < inst.num_fcs(); ++j) p.fcs.push_back(j);
  return Regionalization{{std::move(p)}};
}

Regionalization k_regionalization(const Instance& inst) {
  for (const auto& d : inst.demands())
    if (d.amount != 1)
      fail(ErrorKind::InvalidArgument, "k-regionalization needs unit demands ('" + d.id + "' has " +
                                           std::to_string(d.amount) + ")");
  Assignment x = min_cost_assignment(inst);
  Regionalization reg;
  reg.parts.resize(inst.num_fcs());
  for (std::size_t j = 0; j < inst.num_fcs(); ++j) reg.parts[j].fcs.push_back(j);
  for (const auto& f : x.flows) reg.parts[f.fc].demands.push_back(f.demand);
  return reg;
}

namespace {

Regionalization scale_decomposition(const Instance& inst) {
  const Metric& m = inst.metric();
  for (const auto& d : inst.demands())
    if (d.amount != 1)
      fail(ErrorKind::InvalidArgument, "scale decomposition needs unit demands ('" + d.id + "')");
  for (const auto& f : inst.fcs())
    if (f.capacity != 1)
      fail(ErrorKind::InvalidArgument, "scale decomposition needs unit capacities ('" + f.id + "')");
  const auto q = static_cast<std::size_t>(m.dimension());
  std::int64_t root = 0;
  while (static_cast<std::size_t>(root * root) < q) ++root;
  const std::int64_t B = 2 + root;

  Assignment x = min_cost_assignment(inst);
  std::vector<std::size_t> match(inst.num_demands(), kNone);
  std::vector<char> used(inst.num_fcs(), 0);
  for (const auto& f : x.flows) {
    match[f.demand] = f.fc;
    used[f.fc] = 1;
  }

  const CostMatrix& c = inst.costs();
  Quantity unit = 0;
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (c(i, j) > 0 && (unit == 0 || c(i, j) < unit)) unit = c(i, j);

  std::vector<Quantity> origin(q, 0);
  for (std::size_t a = 0; a < q; ++a) {
    bool first = true;
    auto see = [&](Quantity v) {
      if (first || v < origin[a]) origin[a] = v;
      first = false;
    };
    for (const auto& d : inst.demands()) see(m.demand_coords(d.site)[a]);
    for (const auto& f : inst.fcs()) see(m.fc_coords(f.site)[a]);
  }

  // key: bucket then residues; bucket 0 is the zero-distance region
  std::map<std::vector<std::int64_t>, Region> regions;
  for (std::size_t i = 0; i < inst.num_demands(); ++i) {
    std::size_t j = match[i];
    Quantity t = c(i, j);
    std::vector<std::int64_t> key;
    std::vector<std::int64_t> cell(q, 0);
    int bucket = 0;
    if (t > 0) {
      bucket = 1;
      __int128 reach = static_cast<__int128>(unit) * 2;
      while (t > reach) {
        reach *= 2;
        ++bucket;
      }
      __int128 side = reach * 2;
      key.push_back(bucket);
      auto pos = m.demand_coords(inst.demands()[i].site);
      for (std::size_t a = 0; a < q; ++a) {
        cell[a] = static_cast<std::int64_t>((static_cast<__int128>(pos[a]) - origin[a]) / side);
        key.push_back(cell[a] % B);
      }
    } else {
      key.push_back(0);
    }
    Region& r = regions[key];
    r.bucket = bucket;
    r.demands.push_back(i);
    r.fcs.push_back(j);
    r.cells.push_back(bucket == 0 ? std::vector<std::int64_t>{} : cell);
  }
  Regionalization reg;
  for (auto& [key, r] : regions) reg.parts.push_back(std::move(r));
  Region sink;
  for (std::size_t j = 0; j < inst.num_fcs(); ++j)
    if (!used[j]) sink.fcs.push_back(j);
  if (!sink.fcs.empty()) reg.parts.push_back(std::move(sink));
  return reg;
}

}  // namespace

Regionalization line_scale_decomposition(const Instance& inst) {
  if (inst.metric().kind() != Metric::Kind::Line)
    fail(ErrorKind::InvalidArgument, "line decomposition needs a line metric");
  return scale_decomposition(inst);
}

Regionalization euclidean_scale_decomposition(const Instance& inst) {
  if (inst.metric().kind() != Metric::Kind::Euclidean)
    fail(ErrorKind::InvalidArgument, "euclidean decomposition needs a euclidean metric");
  return scale_decomposition(inst);
}

Verdict zero_beta_per_segment_check(const Instance& inst, const Regionalization& reg,
                                    const RegionalizedSolution& sol) {
  Verdict v;
  if (sol.regions.size() != reg.parts.size()) {
    v.violations.push_back("solution does not match the regionalization");
    return v;
  }
  for (std::size_t r = 0; r < reg.parts.size(); ++r) {
    const Region& p = reg.parts[r];
    if (p.cells.empty() || p.bucket == 0) continue;
    const auto& s = sol.regions[r];
    std::map<std::vector<std::int64_t>, bool> served;
    for (const auto& cell : p.cells) served.emplace(cell, false);
    for (const auto& f : s.assignment.flows)
      if (f.amount > 0 && s.backlog[f.fc] == 0) served[p.cells[f.demand]] = true;
    for (const auto& [cell, ok] : served) {
      if (ok) continue;
      std::string name;
      for (auto c : cell) name += (name.empty() ? "" : ",") + std::to_string(c);
      v.violations.push_back("region " + std::to_string(r) + " (bucket " + std::to_string(p.bucket) +
                             ") cell (" + name + ") has no demand served by a zero-backlog FC");
    }
  }
  (void)inst;
  return v;
}

GroupingResult search_best_fc_grouping(const Instance& inst,
                                       const std::vector<std::vector<std::size_t>>& demand_parts,
                                       std::size_t max_fcs) {
  const std::size_t k = inst.num_fcs();
  const std::size_t r = demand_parts.size();
  if (r == 0) fail(ErrorKind::InvalidArgument, "no demand parts");
  if (k > max_fcs)
    fail(ErrorKind::Bounds, "FC grouping search limited to " + std::to_string(max_fcs) + " FCs (instance has " +
                                std::to_string(k) + ")");
  std::vector<std::int64_t> need(r, 0);
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t i : demand_parts[a]) need[a] += inst.demands().at(i).amount;

  GroupingResult best;
  bool found = false;
  std::vector<std::size_t> owner(k, 0);
  std::vector<std::int64_t> have(r, 0);
  // FCs left to place can still cover at most this much
  std::vector<std::int64_t> tail(k + 1, 0);
  for (std::size_t j = k; j-- > 0;) tail[j] = tail[j + 1] + inst.fcs()[j].capacity;

  auto rec = [&](auto&& self, std::size_t j) -> void {
    std::int64_t missing = 0;
    for (std::size_t a = 0; a < r; ++a) missing += std::max<std::int64_t>(0, need[a] - have[a]);
    if (missing > tail[j]) return;
    if (j == k) {
      Regionalization reg;
      reg.parts.resize(r);
      for (std::size_t a = 0; a < r; ++a) reg.parts[a].demands = demand_parts[a];
      for (std::size_t f = 0; f < k; ++f) reg.parts[owner[f]].fcs.push_back(f);
      RegionalizedSolution s = solve_regionalized(inst, reg);
      ++best.evaluated;
      if (!found || s.total_delay < best.total_delay) {
        found = true;
        best.total_delay = s.total_delay;
        best.regionalization = std::move(reg);
      }
      return;
    }
    for (std::size_t a = 0; a < r; ++a) {
      owner[j] = a;
      have[a] += inst.fcs()[j].capacity;
      self(self, j + 1);
      have[a] -= inst.fcs()[j].capacity;
    }
  };
  rec(rec, 0);
  if (!found) fail(ErrorKind::Infeasible, "no FC allocation covers every part's demand");
  return best;
}

Regionalization grouping_from_assignment(const Instance& inst,
                                         const std::vector<std::vector<std::size_t>>& demand_parts,
                                         const Assignment& x) {
  std::vector<std::size_t> part_of(inst.num_demands(), kNone);
  for (std::size_t a = 0; a < demand_parts.size(); ++a)
    for (std::size_t i : demand_parts[a]) part_of.at(i) = a;
  std::vector<std::size_t> owner(inst.num_fcs(), kNone);
  for (const auto& f : x.flows) {
    if (f.amount == 0) continue;
    std::size_t a = part_of.at(f.demand);
    if (a == kNone) fail(ErrorKind::InvalidArgument, "demand outside every part");
    if (owner[f.fc] != kNone && owner[f.fc] != a)
      fail(ErrorKind::InvalidArgument, "fc '" + inst.fcs()[f.fc].id + "' serves demands in several parts");
    owner[f.fc] = a;
  }
  Regionalization reg;
  reg.parts.resize(demand_parts.size());
  for (std::size_t a = 0; a < demand_parts.size(); ++a) reg.parts[a].demands = demand_parts[a];
  Region sink;
  for (std::size_t j = 0; j < inst.num_fcs(); ++j) {
    if (owner[j] == kNone) sink.fcs.push_back(j);
    else reg.parts[owner[j]].fcs.push_back(j);
  }
  if (!sink.fcs.empty()) reg.parts.push_back(std::move(sink));
  return reg;
}

Regionalization load_regionalization(std::string_view text, const Instance& inst) {
  using json = nlohmann::json;
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed regionalization JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("parts") || !doc["parts"].is_array())
    fail(ErrorKind::Parse, "regionalization must be an object with a \"parts\" array");
  Regionalization reg;
  for (const auto& p : doc["parts"]) {
    if (!p.is_object()) fail(ErrorKind::Parse, "each part must be an object");
    Region r;
    auto ids = [&](const char* key, bool demand) {
      std::vector<std::size_t> out;
      if (!p.contains(key)) return out;
      if (!p[key].is_array()) fail(ErrorKind::Parse, std::string("part.") + key + " must be an array");
      for (const auto& id : p[key]) {
        if (!id.is_string()) fail(ErrorKind::Parse, std::string("part.") + key + " entries must be ids");
        out.push_back(demand ? inst.demand_index(id.get<std::string>()) : inst.fc_index(id.get<std::string>()));
      }
      return out;
    };
    r.demands = ids("demands", true);
    r.fcs = ids("fcs", false);
    if (p.contains("bucket")) r.bucket = p["bucket"].get<int>();
    if (p.contains("cells")) r.cells = p["cells"].get<std::vector<std::vector<std::int64_t>>>();
    reg.parts.push_back(std::move(r));
  }
  validate_regionalization(inst, reg);
  return reg;
}

std::string save_regionalization(const Instance& inst, const Regionalization& reg) {
  using json = nlohmann::ordered_json;
  json parts = json::array();
  for (const auto& p : reg.parts) {
    json e;
    json d = json::array();
    for (std::size_t i : p.demands) d.push_back(inst.demands()[i].id);
    json f = json::array();
    for (std::size_t j : p.fcs) f.push_back(inst.fcs()[j].id);
    e["demands"] = std::move(d);
    e["fcs"] = std::move(f);
    if (p.bucket >= 0) e["bucket"] = p.bucket;
    if (!p.cells.empty()) e["cells"] = p.cells;
    parts.push_back(std::move(e));
  }
  json doc;
  doc["parts"] = std::move(parts);
  return doc.dump(2) + "\n";
}

}  // namespace fenet
