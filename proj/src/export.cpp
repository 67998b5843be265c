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
#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "fenet/error.hpp"
#include "fenet/export.hpp"

namespace fenet {

namespace {

using ojson = nlohmann::ordered_json;

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string assignment_csv(const Instance& inst, const Assignment& x) {
  const Scale s = inst.scale();
  std::ostringstream os;
  os << "demand_id,fc_id,flow,distance\n";
  std::int64_t flow = 0;
  for (const auto& f : x.flows) {
    os << csv_field(inst.demands()[f.demand].id) << ',' << csv_field(inst.fcs()[f.fc].id) << ',' << f.amount << ','
       << format_decimal(inst.distance(f.demand, f.fc), s) << '\n';
    flow += f.amount;
  }
  os << "total,," << flow << ',' << format_decimal(x.cost, s) << '\n';
  return os.str();
}

std::string backlog_csv(const Instance& inst, const EquilibriumSolution& sol) {
  std::ostringstream os;
  os << "fc_id,backlog\n";
  for (std::size_t j = 0; j < inst.num_fcs(); ++j)
    os << csv_field(inst.fcs()[j].id) << ',' << format_decimal(sol.backlog[j], inst.scale()) << '\n';
  return os.str();
}

std::string delay_csv(const Instance& inst, const EquilibriumSolution& sol) {
  std::vector<std::string> served(inst.num_demands());
  for (const auto& f : sol.assignment.flows) {
    auto& s = served[f.demand];
    s += (s.empty() ? "" : ";") + inst.fcs()[f.fc].id;
  }
  std::ostringstream os;
  os << "demand_id,delay,assigned_fcs\n";
  for (std::size_t i = 0; i < inst.num_demands(); ++i)
    os << csv_field(inst.demands()[i].id) << ',' << format_decimal(sol.delay[i], inst.scale()) << ','
       << csv_field(served[i]) << '\n';
  return os.str();
}

std::string solution_json(const Instance& inst, const EquilibriumSolution& sol) {
  ojson doc;
  doc["scale_exponent"] = inst.scale().exponent;
  doc["cost"] = sol.assignment.cost;
  doc["total_delay"] = sol.total_delay;
  ojson flows = ojson::array();
  for (const auto& f : sol.assignment.flows)
    flows.push_back({{"demand", inst.demands()[f.demand].id}, {"fc", inst.fcs()[f.fc].id}, {"flow", f.amount}});
  doc["flows"] = std::move(flows);
  ojson b = ojson::object();
  for (std::size_t j = 0; j < inst.num_fcs(); ++j) b[inst.fcs()[j].id] = sol.backlog[j];
  doc["backlogs"] = std::move(b);
  ojson d = ojson::object();
  for (std::size_t i = 0; i < inst.num_demands(); ++i) d[inst.demands()[i].id] = sol.delay[i];
  doc["delays"] = std::move(d);
  return doc.dump(2) + "\n";
}

EquilibriumSolution solution_from_json(std::string_view text, const Instance& inst) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("malformed solution JSON: ") + e.what());
  }
  try {
    if (doc.at("scale_exponent").get<int>() != inst.scale().exponent)
      fail(ErrorKind::InvalidArgument, "solution was written at a different scale");
    EquilibriumSolution sol;
    std::vector<Flow> flows;
    for (const auto& f : doc.at("flows"))
      flows.push_back({inst.demand_index(f.at("demand").get<std::string>()),
                       inst.fc_index(f.at("fc").get<std::string>()), f.at("flow").get<std::int64_t>()});
    sol.assignment = make_assignment(inst, std::move(flows));
    sol.backlog.assign(inst.num_fcs(), 0);
    sol.delay.assign(inst.num_demands(), 0);
    for (auto it = doc.at("backlogs").begin(); it != doc.at("backlogs").end(); ++it)
      sol.backlog[inst.fc_index(it.key())] = it->get<Quantity>();
    for (auto it = doc.at("delays").begin(); it != doc.at("delays").end(); ++it)
      sol.delay[inst.demand_index(it.key())] = it->get<Quantity>();
    sol.total_delay = doc.at("total_delay").get<Quantity>();
    return sol;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("bad solution document: ") + e.what());
  }
}

std::string regions_csv(const Instance& inst, const RegionalizedSolution& sol) {
  const Scale s = inst.scale();
  std::ostringstream os;
  os << "region,demands,fcs,demand,capacity,min_cost,delay,max_backlog\n";
  std::int64_t td = 0, tc = 0;
  Quantity tcost = 0, tb = 0;
  std::size_t nd = 0, nf = 0;
  for (std::size_t r = 0; r < sol.regions.size(); ++r) {
    const Instance& sub = sol.instances[r];
    const auto& e = sol.regions[r];
    Quantity mb = 0;
    for (Quantity b : e.backlog) mb = std::max(mb, b);
    os << r << ',' << sub.num_demands() << ',' << sub.num_fcs() << ',' << sub.total_demand() << ','
       << sub.total_capacity() << ',' << format_decimal(e.assignment.cost, s) << ','
       << format_decimal(e.total_delay, s) << ',' << format_decimal(mb, s) << '\n';
    nd += sub.num_demands();
    nf += sub.num_fcs();
    td += sub.total_demand();
    tc += sub.total_capacity();
    tcost += e.assignment.cost;
    tb = std::max(tb, mb);
  }
  os << "total," << nd << ',' << nf << ',' << td << ',' << tc << ',' << format_decimal(tcost, s) << ','
     << format_decimal(sol.total_delay, s) << ',' << format_decimal(tb, s) << '\n';
  return os.str();
}

std::string trace_csv(const DynamicsTrace& tr) {
  std::ostringstream os;
  os << "t,fc_id,backlog\n";
  for (const auto& smp : tr.samples)
    for (std::size_t j = 0; j < tr.fc_ids.size(); ++j)
      os << format_decimal(smp.t, tr.scale) << ',' << csv_field(tr.fc_ids[j]) << ','
         << format_decimal(smp.backlog[j], tr.scale) << '\n';
  return os.str();
}

std::string trace_summary_json(const DynamicsTrace& tr, const ConvergenceReport& rep) {
  ojson doc;
  doc["dt"] = format_decimal(tr.dt, tr.scale);
  doc["steps"] = tr.samples.empty() ? 0 : tr.samples.back().step;
  doc["samples"] = tr.samples.size();
  doc["final_residual"] = format_decimal(rep.final_residual, tr.scale);
  doc["mean_residual"] = rep.mean_residual;
  doc["tail_mean_residual"] = rep.tail_mean;
  doc["previous_mean_residual"] = rep.previous_mean;
  doc["oscillating"] = rep.oscillating;
  ojson fcs = ojson::array();
  for (std::size_t j = 0; j < tr.fc_ids.size(); ++j)
    fcs.push_back({{"fc", tr.fc_ids[j]},
                   {"final_backlog", format_decimal(rep.final_backlog[j], tr.scale)},
                   {"static_backlog", format_decimal(rep.static_backlog[j], tr.scale)}});
  doc["fcs"] = std::move(fcs);
  ojson mass;
  mass["injected"] = tr.injected;
  mass["processed"] = tr.processed;
  mass["idle"] = tr.idle;
  mass["initial_queue"] = tr.initial_total;
  mass["final_queue"] = tr.final_total;
  mass["clamped_steps"] = tr.clamped_steps;
  mass["conservation_errors"] = tr.conservation_errors;
  doc["mass"] = std::move(mass);
  return doc.dump(2) + "\n";
}

std::string sweep_csv(const std::vector<SweepRow>& rows, Scale scale) {
  std::ostringstream os;
  os << "alpha,delay,min_cost,max_backlog\n";
  for (const auto& r : rows)
    os << r.alpha << ',' << format_decimal(r.delay, scale) << ',' << format_decimal(r.min_cost, scale) << ','
       << format_decimal(r.max_backlog, scale) << '\n';
  return os.str();
}

std::string sweep_svg(const std::vector<SweepRow>& rows, Scale scale) {
  const double W = 640, H = 400, left = 80, right = 20, top = 30, bottom = 50;
  double ymax = 0;
  for (const auto& r : rows) ymax = std::max({ymax, to_double(r.delay, scale), to_double(r.min_cost, scale)});
  if (ymax <= 0) ymax = 1;
  auto px = [&](const SweepRow& r) { return left + to_double(parse_decimal(r.alpha, scale), scale) * (W - left - right); };
  auto py = [&](Quantity v) { return H - bottom - to_double(v, scale) / ymax * (H - top - bottom); };
  auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return std::string(buf);
  };
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
     << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\" viewBox=\"0 0 " << W
     << ' ' << H << "\">\n"
     << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">Delay versus alpha</text>\n"
     << "<line x1=\"" << left << "\" y1=\"" << H - bottom << "\" x2=\"" << W - right << "\" y2=\"" << H - bottom
     << "\" stroke=\"black\"/>\n"
     << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << H - bottom
     << "\" stroke=\"black\"/>\n"
     << "<text x=\"" << (W + left) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">alpha</text>\n"
     << "<text x=\"16\" y=\"" << (H - bottom + top) / 2 << "\" font-size=\"12\" transform=\"rotate(-90 16 "
     << (H - bottom + top) / 2 << ")\" text-anchor=\"middle\">total delay</text>\n";
  for (int t = 0; t <= 4; ++t) {
    double a = t / 4.0;
    os << "<text x=\"" << num(left + a * (W - left - right)) << "\" y=\"" << H - bottom + 16
       << "\" text-anchor=\"middle\" font-size=\"10\">" << num(a) << "</text>\n";
    os << "<text x=\"" << left - 6 << "\" y=\"" << num(H - bottom - a * (H - top - bottom) + 3)
       << "\" text-anchor=\"end\" font-size=\"10\">" << num(a * ymax) << "</text>\n";
  }
  auto series = [&](const char* name, const char* colour, bool delay) {
    os << "<g id=\"" << name << "\">\n<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < rows.size(); ++i)
      os << (i ? " " : "") << num(px(rows[i])) << ',' << num(py(delay ? rows[i].delay : rows[i].min_cost));
    os << "\"/>\n";
    for (const auto& r : rows) {
      Quantity v = delay ? r.delay : r.min_cost;
      os << "<circle cx=\"" << num(px(r)) << "\" cy=\"" << num(py(v)) << "\" r=\"3\" fill=\"" << colour
         << "\" data-alpha=\"" << xml_escape(r.alpha) << "\" data-value=\"" << format_decimal(v, scale)
         << "\"><title>alpha=" << xml_escape(r.alpha) << ' ' << name << '=' << format_decimal(v, scale)
         << "</title></circle>\n";
    }
    os << "</g>\n";
  };
  series("delay", "steelblue", true);
  series("min_cost", "darkorange", false);
  os << "<text x=\"" << W - right - 150 << "\" y=\"" << top + 10 << "\" font-size=\"11\" fill=\"steelblue\">equilibrium delay</text>\n"
     << "<text x=\"" << W - right - 150 << "\" y=\"" << top + 25
     << "\" font-size=\"11\" fill=\"darkorange\">minimum cost</text>\n"
     << "</svg>\n";
  return os.str();
}

}  // namespace fenet
