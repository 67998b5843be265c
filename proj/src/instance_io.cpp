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

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

#include "fenet/error.hpp"
#include "fenet/instance.hpp"

namespace fenet {

namespace {

using json = nlohmann::ordered_json;

Quantity read_decimal(const json& v, Scale scale, const std::string& what) {
  if (v.is_string()) return parse_decimal(v.get<std::string>(), scale);
  if (v.is_number()) return parse_decimal(v.dump(), scale);
  fail(ErrorKind::Parse, what + ": expected a decimal string");
}

std::int64_t read_integer(const json& v, const std::string& what) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d == static_cast<double>(static_cast<std::int64_t>(d)))
      return static_cast<std::int64_t>(d);
  }
  if (v.is_string()) {
    const auto& s = v.get_ref<const std::string&>();
    std::size_t used = 0;
    try {
      long long x = std::stoll(s, &used);
      if (used == s.size()) return x;
    } catch (const std::exception&) {
    }
  }
  fail(ErrorKind::Parse, what + ": expected an integer");
}

const json& need(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) fail(ErrorKind::Parse, where + ": missing \"" + key + "\"");
  return *it;
}

void only_keys(const json& obj, std::initializer_list<const char*> keys,
               const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool ok = false;
    for (const char* k : keys) ok = ok || it.key() == k;
    if (!ok) fail(ErrorKind::Parse, where + ": unexpected key \"" + it.key() + "\"");
  }
}

struct Node {
  std::string id;
  std::int64_t amount;
  const json* loc;
};

std::vector<Node> read_nodes(const json& doc, const char* list, const char* qty,
                             const char* loc_key) {
  const json& arr = need(doc, list, "document");
  if (!arr.is_array()) fail(ErrorKind::Parse, std::string(list) + " must be an array");
  std::vector<Node> out;
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const json& e = arr[k];
    std::string where = std::string(list) + "[" + std::to_string(k) + "]";
    if (!e.is_object()) fail(ErrorKind::Parse, where + " must be an object");
    only_keys(e, {"id", "pos", "node", qty}, where);
    const json& id = need(e, "id", where);
    if (!id.is_string()) fail(ErrorKind::Parse, where + ".id must be a string");
    static const json kNull;
    auto at = e.find(loc_key);
    out.push_back({id.get<std::string>(), read_integer(need(e, qty, where), where + "." + qty),
                   at == e.end() ? &kNull : &*at});
  }
  return out;
}

}  // namespace

Instance load_instance(std::string_view text, Scale scale) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) fail(ErrorKind::Parse, "document must be a JSON object");
  only_keys(doc, {"metric", "demands", "fcs"}, "document");
  const json& metric = need(doc, "metric", "document");
  if (!metric.is_object()) fail(ErrorKind::Parse, "metric must be an object");
  const json& type = need(metric, "type", "metric");
  if (!type.is_string()) fail(ErrorKind::Parse, "metric.type must be a string");
  std::string kind = type.get<std::string>();

  const bool tree = kind == "tree";
  const char* loc = tree ? "node" : "pos";
  auto dn = read_nodes(doc, "demands", "d", loc);
  auto fn = read_nodes(doc, "fcs", "c", loc);

  std::vector<Demand> demands;
  std::vector<Facility> fcs;
  for (std::size_t i = 0; i < dn.size(); ++i) demands.push_back({dn[i].id, dn[i].amount, i});
  for (std::size_t j = 0; j < fn.size(); ++j) fcs.push_back({fn[j].id, fn[j].amount, j});

  std::shared_ptr<const Metric> m;
  if (kind == "line") {
    only_keys(metric, {"type"}, "metric");
    std::vector<Quantity> dp, fp;
    for (const auto& n : dn) dp.push_back(read_decimal(*n.loc, scale, "demand '" + n.id + "' pos"));
    for (const auto& n : fn) fp.push_back(read_decimal(*n.loc, scale, "fc '" + n.id + "' pos"));
    m = std::make_shared<Metric>(Metric::line(std::move(dp), std::move(fp)));
  } else if (kind == "euclidean") {
    only_keys(metric, {"type", "dim"}, "metric");
    auto dim = read_integer(need(metric, "dim", "metric"), "metric.dim");
    if (dim < 1 || dim > 16) fail(ErrorKind::Parse, "metric.dim must be in [1, 16]");
    auto coords = [&](const std::vector<Node>& nodes) {
      std::vector<Quantity> out;
      for (const auto& n : nodes) {
        if (!n.loc->is_array() || n.loc->size() != static_cast<std::size_t>(dim))
          fail(ErrorKind::Parse, "'" + n.id + "' pos must be an array of " +
                                     std::to_string(dim) + " decimals");
        for (const auto& c : *n.loc) out.push_back(read_decimal(c, scale, "'" + n.id + "' pos"));
      }
      return out;
    };
    auto dc = coords(dn);
    auto fc = coords(fn);
    m = std::make_shared<Metric>(Metric::euclidean(static_cast<int>(dim), std::move(dc), std::move(fc)));
  } else if (kind == "tree") {
    only_keys(metric, {"type", "nodes", "edges"}, "metric");
    const json& nodes = need(metric, "nodes", "metric");
    const json& edges = need(metric, "edges", "metric");
    if (!nodes.is_array() || !edges.is_array())
      fail(ErrorKind::Parse, "metric.nodes and metric.edges must be arrays");
    std::vector<std::string> names;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& n : nodes) {
      if (!n.is_string()) fail(ErrorKind::Parse, "tree node names must be strings");
      if (!index.emplace(n.get<std::string>(), names.size()).second)
        fail(ErrorKind::Parse, "duplicate tree node '" + n.get<std::string>() + "'");
      names.push_back(n.get<std::string>());
    }
    auto lookup = [&](const json& v, const std::string& what) {
      if (!v.is_string()) fail(ErrorKind::Parse, what + " must be a node name");
      auto it = index.find(v.get<std::string>());
      if (it == index.end())
        fail(ErrorKind::Parse, what + ": unknown tree node '" + v.get<std::string>() + "'");
      return it->second;
    };
    std::vector<TreeEdge> te;
    for (std::size_t k = 0; k < edges.size(); ++k) {
      const json& e = edges[k];
      std::string where = "edges[" + std::to_string(k) + "]";
      if (!e.is_object()) fail(ErrorKind::Parse, where + " must be an object");
      only_keys(e, {"u", "v", "w"}, where);
      te.push_back({lookup(need(e, "u", where), where + ".u"),
                    lookup(need(e, "v", where), where + ".v"),
                    read_decimal(need(e, "w", where), scale, where + ".w")});
    }
    std::vector<std::size_t> dnode, fnode;
    for (const auto& n : dn) dnode.push_back(lookup(*n.loc, "demand '" + n.id + "' node"));
    for (const auto& n : fn) fnode.push_back(lookup(*n.loc, "fc '" + n.id + "' node"));
    m = std::make_shared<Metric>(
        Metric::tree(std::move(names), std::move(te), std::move(dnode), std::move(fnode)));
  } else if (kind == "matrix") {
    only_keys(metric, {"type", "rows"}, "metric");
    const json& rows = need(metric, "rows", "metric");
    if (!rows.is_array() || rows.size() != dn.size())
      fail(ErrorKind::Parse, "metric.rows must have one row per demand");
    std::vector<std::vector<Quantity>> table;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!rows[i].is_array() || rows[i].size() != fn.size())
        fail(ErrorKind::Parse, "metric.rows[" + std::to_string(i) + "] must have one entry per fc");
      std::vector<Quantity> r;
      for (const auto& v : rows[i]) r.push_back(read_decimal(v, scale, "metric.rows"));
      table.push_back(std::move(r));
    }
    // demands and FCs carry no location in a matrix document
    for (const auto& n : dn)
      if (!n.loc->is_null()) fail(ErrorKind::Parse, "matrix metric: demand '" + n.id + "' must not have pos");
    for (const auto& n : fn)
      if (!n.loc->is_null()) fail(ErrorKind::Parse, "matrix metric: fc '" + n.id + "' must not have pos");
    m = std::make_shared<Metric>(Metric::matrix(std::move(table), fn.size()));
  } else {
    fail(ErrorKind::Parse, "unknown metric type '" + kind + "'");
  }
  return Instance(std::move(demands), std::move(fcs), std::move(m), scale);
}

Instance load_instance_file(const std::string& path, Scale scale) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return load_instance(ss.str(), scale);
}

std::string save_instance(const Instance& inst) {
  const Metric& m = inst.metric();
  const Scale s = inst.scale();
  json doc;
  json metric;
  metric["type"] = m.kind_name();
  auto pos = [&](std::span<const Quantity> c) -> json {
    if (m.kind() == Metric::Kind::Line) return format_decimal(c[0], s);
    json a = json::array();
    for (Quantity v : c) a.push_back(format_decimal(v, s));
    return a;
  };
  switch (m.kind()) {
    case Metric::Kind::Line:
      break;
    case Metric::Kind::Euclidean:
      metric["dim"] = m.dimension();
      break;
    case Metric::Kind::Tree: {
      json nodes = json::array();
      for (const auto& n : m.tree_nodes()) nodes.push_back(n);
      json edges = json::array();
      for (const auto& e : m.tree_edges())
        edges.push_back({{"u", m.tree_nodes()[e.u]},
                         {"v", m.tree_nodes()[e.v]},
                         {"w", format_decimal(e.w, s)}});
      metric["nodes"] = std::move(nodes);
      metric["edges"] = std::move(edges);
      break;
    }
    case Metric::Kind::Matrix: {
      json rows = json::array();
      for (std::size_t i = 0; i < inst.num_demands(); ++i) {
        json r = json::array();
        for (std::size_t j = 0; j < inst.num_fcs(); ++j)
          r.push_back(format_decimal(inst.distance(i, j), s));
        rows.push_back(std::move(r));
      }
      metric["rows"] = std::move(rows);
      break;
    }
  }
  doc["metric"] = std::move(metric);

  auto location = [&](json& e, bool demand, std::size_t site) {
    switch (m.kind()) {
      case Metric::Kind::Line:
      case Metric::Kind::Euclidean:
        e["pos"] = pos(demand ? m.demand_coords(site) : m.fc_coords(site));
        break;
      case Metric::Kind::Tree:
        e["node"] = m.tree_nodes()[demand ? m.demand_node(site) : m.fc_node(site)];
        break;
      case Metric::Kind::Matrix:
        break;
    }
  };
  json demands = json::array();
  for (const auto& d : inst.demands()) {
    json e;
    e["id"] = d.id;
    location(e, true, d.site);
    e["d"] = d.amount;
    demands.push_back(std::move(e));
  }
  json fcs = json::array();
  for (const auto& f : inst.fcs()) {
    json e;
    e["id"] = f.id;
    location(e, false, f.site);
    e["c"] = f.capacity;
    fcs.push_back(std::move(e));
  }
  doc["demands"] = std::move(demands);
  doc["fcs"] = std::move(fcs);
  return doc.dump(2) + "\n";
}

}  // namespace fenet
