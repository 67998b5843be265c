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

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fenet/assignment.hpp"
#include "fenet/dynamics.hpp"
#include "fenet/equilibrium.hpp"
#include "fenet/error.hpp"
#include "fenet/export.hpp"
#include "fenet/fenet.h"
#include "fenet/generators.hpp"
#include "fenet/regionalize.hpp"

struct fe_instance {
  fenet::Instance inst;
};
struct fe_solution {
  fenet::EquilibriumSolution sol;
};
struct fe_regionalization {
  fenet::Regionalization reg;
};
struct fe_regional_solution {
  fenet::RegionalizedSolution sol;
};
struct fe_trace {
  fenet::DynamicsTrace trace;
  fenet::EquilibriumSolution reference;
};

namespace {

using fenet::ErrorKind;
using fenet::fail;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

thread_local std::string g_last_error;

fe_status status_of(ErrorKind k) {
  switch (k) {
    case ErrorKind::InvalidArgument: return FE_ERR_INVALID_ARGUMENT;
    case ErrorKind::Parse: return FE_ERR_PARSE;
    case ErrorKind::Infeasible: return FE_ERR_INFEASIBLE;
    case ErrorKind::Invariant: return FE_ERR_INVARIANT;
    case ErrorKind::InvalidInstance: return FE_ERR_INVALID_INSTANCE;
    case ErrorKind::Bounds: return FE_ERR_BOUNDS;
    case ErrorKind::UnknownId: return FE_ERR_UNKNOWN_ID;
    case ErrorKind::NotOptimal: return FE_ERR_NOT_OPTIMAL;
    case ErrorKind::Io: return FE_ERR_IO;
  }
  return FE_ERR_INVARIANT;
}

template <class F>
fe_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return FE_OK;
  } catch (const fenet::Error& e) {
    g_last_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    g_last_error = std::string("bad JSON: ") + e.what();
    return FE_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return FE_ERR_INVARIANT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return FE_ERR_INVARIANT;
  } catch (...) {
    g_last_error = "unknown failure";
    return FE_ERR_INVARIANT;
  }
}

void need(const void* p, const char* what) {
  if (p == nullptr) fail(ErrorKind::InvalidArgument, std::string(what) + " is null");
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out != nullptr) *out = dup(s);
}

json parse_params(const char* text) {
  if (text == nullptr || *text == '\0') return json::object();
  json p = json::parse(text);
  if (!p.is_object()) fail(ErrorKind::Parse, "parameters must be a JSON object");
  return p;
}

// Numbers may arrive as JSON numbers or strings; both go through the exact
// decimal parser.
std::string text_of(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

std::int64_t int_param(const json& p, const char* key, std::int64_t fallback) {
  if (!p.contains(key)) return fallback;
  const std::string t = text_of(p.at(key));
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != t.size() || t.empty()) fail(ErrorKind::InvalidArgument, std::string(key) + " must be an integer");
  return v;
}

fenet::Quantity qty_param(const json& p, const char* key, const char* fallback, fenet::Scale s) {
  return fenet::parse_decimal(p.contains(key) ? text_of(p.at(key)) : std::string(fallback), s);
}

std::string str_param(const json& p, const char* key, const std::string& fallback) {
  return p.contains(key) ? text_of(p.at(key)) : fallback;
}

void only_keys(const json& p, std::initializer_list<const char*> keys) {
  for (auto it = p.begin(); it != p.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(ErrorKind::InvalidArgument, "unknown parameter '" + it.key() + "'");
  }
}

ojson reg_doc(const fenet::Instance& inst, const fenet::Regionalization& reg) {
  return ojson::parse(fenet::save_regionalization(inst, reg));
}

fenet::SyntheticConfig synthetic_config(const json& p) {
  only_keys(p, {"seed", "n_demands", "n_fcs", "alpha", "clusters", "spread", "side", "rural", "headroom"});
  fenet::SyntheticConfig c;
  c.seed = static_cast<std::uint64_t>(int_param(p, "seed", static_cast<std::int64_t>(c.seed)));
  c.n_demands = int_param(p, "n_demands", c.n_demands);
  c.n_fcs = int_param(p, "n_fcs", c.n_fcs);
  c.alpha = str_param(p, "alpha", c.alpha);
  c.clusters = int_param(p, "clusters", c.clusters);
  if (p.contains("spread")) c.spread = std::stod(text_of(p["spread"]));
  if (p.contains("side")) c.side = std::stod(text_of(p["side"]));
  if (p.contains("rural")) c.rural = std::stod(text_of(p["rural"]));
  c.headroom = str_param(p, "headroom", c.headroom);
  return c;
}

std::string verdict_json(const fenet::Verdict& v) {
  ojson doc;
  doc["ok"] = v.ok();
  doc["violations"] = v.violations;
  return doc.dump(2) + "\n";
}

}  // namespace

extern "C" {

const char* fe_version(void) { return "1.0.0"; }

const char* fe_status_name(fe_status s) {
  switch (s) {
    case FE_OK: return "ok";
    case FE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FE_ERR_PARSE: return "parse error";
    case FE_ERR_INFEASIBLE: return "infeasible";
    case FE_ERR_INVARIANT: return "invariant violation";
    case FE_ERR_BOUNDS: return "out of bounds";
    case FE_ERR_IO: return "i/o error";
    case FE_ERR_NOT_OPTIMAL: return "not optimal";
    case FE_ERR_UNKNOWN_ID: return "unknown id";
    case FE_ERR_INVALID_INSTANCE: return "invalid instance";
  }
  return "unknown status";
}

const char* fe_last_error(void) { return g_last_error.c_str(); }

void fe_string_free(char* s) { std::free(s); }

fe_status fe_scale_parse(const char* text, int* exponent) {
  return guard([&] {
    need(exponent, "exponent");
    *exponent = (text == nullptr ? fenet::Scale::from_env() : fenet::Scale::parse(text)).exponent;
  });
}

fe_status fe_generate(const char* kind, const char* params_json, int scale_exponent, fe_instance** out,
                      char** companions) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    const fenet::Scale s = fenet::Scale::from_exponent(scale_exponent);
    const json p = parse_params(params_json);
    const std::string k = kind;
    ojson comp = ojson::object();
    // FC groupings for a fixed demand partition: FCs following the global
    // min-cost assignment, and the best grouping found by search.
    auto by_assignment = [&](const fenet::Instance& inst, const fenet::DemandParts& parts) {
      return reg_doc(inst, fenet::grouping_from_assignment(inst, parts, fenet::min_cost_assignment(inst)));
    };
    auto best = [&](const fenet::Instance& inst, const fenet::DemandParts& parts) {
      return reg_doc(inst, fenet::search_best_fc_grouping(inst, parts).regionalization);
    };
    fenet::Instance inst({}, {}, std::make_shared<fenet::Metric>(fenet::Metric::line({}, {})), s);
    if (k == "continuous-line") {
      only_keys(p, {"n", "cut"});
      inst = fenet::generate_continuous_line(int_param(p, "n", 1000), s);
      comp["split"] = reg_doc(inst, fenet::continuous_line_split(inst, qty_param(p, "cut", "0.5", s)));
    } else if (k == "line-lb") {
      only_keys(p, {"k", "dprime", "L"});
      auto g = fenet::generate_line_lb(static_cast<int>(int_param(p, "k", 3)), int_param(p, "dprime", 10),
                                       qty_param(p, "L", "100", s), s);
      inst = g.instance;
      comp["k-regions"] = reg_doc(inst, g.k_regions);
    } else if (k == "line-noncontig") {
      only_keys(p, {});
      auto g = fenet::generate_line_noncontig(s);
      inst = g.instance;
      comp["global-grouping"] = by_assignment(inst, g.demand_parts);
      comp["best-grouping"] = best(inst, g.demand_parts);
    } else if (k == "tree2") {
      only_keys(p, {"L", "eps"});
      auto g = fenet::generate_tree2(qty_param(p, "L", "100", s), qty_param(p, "eps", "1", s), s);
      inst = g.instance;
      comp["global-grouping"] = by_assignment(inst, g.demand_parts);
      comp["best-grouping"] = best(inst, g.demand_parts);
    } else if (k == "tree-r") {
      only_keys(p, {"r", "L", "eps"});
      auto g = fenet::generate_tree_r(static_cast<int>(int_param(p, "r", 3)), qty_param(p, "L", "100", s),
                                      qty_param(p, "eps", "1", s), s);
      inst = g.instance;
      comp["contiguous-global-grouping"] = by_assignment(inst, g.contiguous);
      if (inst.num_fcs() <= 10) comp["contiguous-best-grouping"] = best(inst, g.contiguous);
      comp["contiguous-alternate-grouping"] = reg_doc(inst, g.alternate);
      comp["noncontiguous-global-grouping"] = by_assignment(inst, g.noncontiguous);
    } else if (k == "synthetic") {
      inst = fenet::generate_synthetic_national(synthetic_config(p), s);
      comp["quadrants"] = reg_doc(inst, fenet::quadrant_regionalization(inst, synthetic_config(p).side));
    } else {
      fail(ErrorKind::InvalidArgument, "unknown generator '" + k + "'");
    }
    put(companions, comp.dump());
    *out = new fe_instance{std::move(inst)};
  });
}

fe_status fe_instance_from_json(const char* text, int scale_exponent, fe_instance** out) {
  return guard([&] {
    need(text, "json");
    need(out, "out");
    *out = new fe_instance{fenet::load_instance(text, fenet::Scale::from_exponent(scale_exponent))};
  });
}

fe_status fe_instance_load(const char* path, int scale_exponent, fe_instance** out) {
  return guard([&] {
    need(path, "path");
    need(out, "out");
    *out = new fe_instance{fenet::load_instance_file(path, fenet::Scale::from_exponent(scale_exponent))};
  });
}

fe_status fe_instance_to_json(const fe_instance* inst, char** out) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    *out = dup(fenet::save_instance(inst->inst));
  });
}

fe_status fe_instance_info(const fe_instance* h, char** out) {
  return guard([&] {
    need(h, "instance");
    need(out, "out");
    const auto& inst = h->inst;
    ojson doc;
    doc["metric"] = inst.metric().kind_name();
    doc["demands"] = inst.num_demands();
    doc["fcs"] = inst.num_fcs();
    doc["total_demand"] = inst.total_demand();
    doc["total_capacity"] = inst.total_capacity();
    doc["scale_exponent"] = inst.scale().exponent;
    bool any = false;
    for (std::size_t i = 0; i < inst.num_demands() && !any; ++i)
      for (std::size_t j = 0; j < inst.num_fcs() && !any; ++j) any = inst.distance(i, j) > 0;
    if (any) {
      auto rho = fenet::aspect_ratio(inst);
      doc["aspect_ratio"] = {{"num", rho.num}, {"den", rho.den}, {"value", rho.value()}};
      doc["ceil_log2_aspect_ratio"] = fenet::ceil_log2(rho);
    } else {
      doc["aspect_ratio"] = nullptr;
    }
    *out = dup(doc.dump(2) + "\n");
  });
}

fe_status fe_instance_distance(const fe_instance* inst, const char* d, const char* f, int64_t* out) {
  return guard([&] {
    need(inst, "instance");
    need(d, "demand id");
    need(f, "fc id");
    need(out, "out");
    *out = inst->inst.distance(std::string_view(d), std::string_view(f));
  });
}

int fe_instance_scale(const fe_instance* inst) { return inst == nullptr ? -1 : inst->inst.scale().exponent; }

void fe_instance_free(fe_instance* inst) { delete inst; }

fe_status fe_solve(const fe_instance* inst, fe_solution** out) {
  return guard([&] {
    need(inst, "instance");
    need(out, "out");
    *out = new fe_solution{fenet::min_delay_equilibrium(inst->inst)};
  });
}

fe_status fe_solution_from_json(const fe_instance* inst, const char* text, fe_solution** out) {
  return guard([&] {
    need(inst, "instance");
    need(text, "json");
    need(out, "out");
    *out = new fe_solution{fenet::solution_from_json(text, inst->inst)};
  });
}

fe_status fe_solution_totals(const fe_solution* sol, int64_t* cost, int64_t* total_delay) {
  return guard([&] {
    need(sol, "solution");
    if (cost != nullptr) *cost = sol->sol.assignment.cost;
    if (total_delay != nullptr) *total_delay = sol->sol.total_delay;
  });
}

fe_status fe_solution_render(const fe_instance* inst, const fe_solution* sol, const char* format, char** out) {
  return guard([&] {
    need(inst, "instance");
    need(sol, "solution");
    need(format, "format");
    need(out, "out");
    const std::string f = format;
    if (f == "json")
      *out = dup(fenet::solution_json(inst->inst, sol->sol));
    else if (f == "assignment.csv")
      *out = dup(fenet::assignment_csv(inst->inst, sol->sol.assignment));
    else if (f == "backlogs.csv")
      *out = dup(fenet::backlog_csv(inst->inst, sol->sol));
    else if (f == "delays.csv")
      *out = dup(fenet::delay_csv(inst->inst, sol->sol));
    else
      fail(ErrorKind::InvalidArgument, "unknown solution format '" + f + "'");
  });
}

fe_status fe_solution_verify(const fe_instance* inst, const fe_solution* sol, int* ok, char** report) {
  return guard([&] {
    need(inst, "instance");
    need(sol, "solution");
    need(ok, "ok");
    auto v = fenet::verify_equilibrium(inst->inst, sol->sol);
    *ok = v.ok() ? 1 : 0;
    put(report, verdict_json(v));
  });
}

void fe_solution_free(fe_solution* sol) { delete sol; }

fe_status fe_regionalize(const fe_instance* h, const char* method, fe_regionalization** out) {
  return guard([&] {
    need(h, "instance");
    need(method, "method");
    need(out, "out");
    const std::string m = method;
    const auto& inst = h->inst;
    fenet::Regionalization reg;
    if (m == "single")
      reg = fenet::single_region(inst);
    else if (m == "k")
      reg = fenet::k_regionalization(inst);
    else if (m == "line-scale")
      reg = fenet::line_scale_decomposition(inst);
    else if (m == "euclidean-scale")
      reg = fenet::euclidean_scale_decomposition(inst);
    else if (m == "quadrant")
      reg = fenet::quadrant_regionalization(inst);
    else
      fail(ErrorKind::InvalidArgument, "unknown regionalization method '" + m + "'");
    *out = new fe_regionalization{std::move(reg)};
  });
}

fe_status fe_regionalization_from_json(const fe_instance* inst, const char* text, fe_regionalization** out) {
  return guard([&] {
    need(inst, "instance");
    need(text, "json");
    need(out, "out");
    *out = new fe_regionalization{fenet::load_regionalization(text, inst->inst)};
  });
}

fe_status fe_regionalization_to_json(const fe_instance* inst, const fe_regionalization* reg, char** out) {
  return guard([&] {
    need(inst, "instance");
    need(reg, "regionalization");
    need(out, "out");
    *out = dup(fenet::save_regionalization(inst->inst, reg->reg));
  });
}

size_t fe_regionalization_regions(const fe_regionalization* reg) {
  return reg == nullptr ? 0 : fenet::demand_region_count(reg->reg);
}

void fe_regionalization_free(fe_regionalization* reg) { delete reg; }

fe_status fe_solve_regionalized(const fe_instance* inst, const fe_regionalization* reg,
                                fe_regional_solution** out) {
  return guard([&] {
    need(inst, "instance");
    need(reg, "regionalization");
    need(out, "out");
    *out = new fe_regional_solution{fenet::solve_regionalized(inst->inst, reg->reg)};
  });
}

fe_status fe_regional_total_delay(const fe_regional_solution* sol, int64_t* out) {
  return guard([&] {
    need(sol, "solution");
    need(out, "out");
    *out = sol->sol.total_delay;
  });
}

fe_status fe_regional_flatten(const fe_instance* inst, const fe_regional_solution* sol, fe_solution** out) {
  return guard([&] {
    need(inst, "instance");
    need(sol, "solution");
    need(out, "out");
    *out = new fe_solution{fenet::flatten(inst->inst, sol->sol)};
  });
}

fe_status fe_regional_render(const fe_instance* inst, const fe_regional_solution* sol, const char* format,
                             char** out) {
  return guard([&] {
    need(inst, "instance");
    need(sol, "solution");
    need(format, "format");
    need(out, "out");
    if (std::string(format) != "regions.csv")
      fail(ErrorKind::InvalidArgument, std::string("unknown regional format '") + format + "'");
    *out = dup(fenet::regions_csv(inst->inst, sol->sol));
  });
}

fe_status fe_regional_check_segments(const fe_instance* inst, const fe_regional_solution* sol, int* ok,
                                     char** report) {
  return guard([&] {
    need(inst, "instance");
    need(sol, "solution");
    need(ok, "ok");
    auto v = fenet::zero_beta_per_segment_check(inst->inst, sol->sol.regionalization, sol->sol);
    *ok = v.ok() ? 1 : 0;
    put(report, verdict_json(v));
  });
}

void fe_regional_free(fe_regional_solution* sol) { delete sol; }

fe_status fe_compare(const fe_instance* h, const fe_regionalization* reg, char** report) {
  return guard([&] {
    need(h, "instance");
    need(reg, "regionalization");
    need(report, "report");
    const auto& inst = h->inst;
    const fenet::Scale s = inst.scale();
    auto global = fenet::min_delay_equilibrium(inst);
    auto regional = fenet::solve_regionalized(inst, reg->reg);
    ojson doc;
    doc["scale_exponent"] = s.exponent;
    doc["regions"] = fenet::demand_region_count(reg->reg);
    doc["min_cost"] = fenet::format_decimal(global.assignment.cost, s);
    doc["global_delay"] = fenet::format_decimal(global.total_delay, s);
    doc["regional_delay"] = fenet::format_decimal(regional.total_delay, s);
    const fenet::Quantity gain = global.total_delay - regional.total_delay;
    doc["improvement"] = fenet::format_decimal(gain, s);
    // Exact fraction as well as a rounded percentage.
    doc["improvement_ratio"] = {{"num", gain}, {"den", global.total_delay}};
    doc["improvement_percent"] =
        global.total_delay == 0 ? 0.0 : 100.0 * static_cast<double>(gain) / static_cast<double>(global.total_delay);
    *report = dup(doc.dump(2) + "\n");
  });
}

fe_status fe_simulate(const fe_instance* h, const char* config_json, fe_trace** out) {
  return guard([&] {
    need(h, "instance");
    need(out, "out");
    const auto& inst = h->inst;
    const json p = parse_params(config_json);
    only_keys(p, {"dt", "steps", "sample_every", "routing", "initial"});
    fenet::SimulationConfig cfg;
    cfg.dt = qty_param(p, "dt", "0.01", inst.scale());
    cfg.steps = int_param(p, "steps", 100000);
    cfg.sample_every = int_param(p, "sample_every", std::max<std::int64_t>(1, cfg.steps / 1000));
    const std::string routing = str_param(p, "routing", "greedy");
    const std::string initial = str_param(p, "initial", "zero");
    auto reference = fenet::min_delay_equilibrium(inst);
    if (routing == "greedy") {
      cfg.routing = fenet::Routing::Greedy;
    } else if (routing == "fixed") {
      cfg.routing = fenet::Routing::Fixed;
      cfg.fixed = reference.assignment;
    } else {
      fail(ErrorKind::InvalidArgument, "routing must be greedy or fixed");
    }
    if (initial == "static")
      cfg.initial_backlog = reference.backlog;
    else if (initial != "zero")
      fail(ErrorKind::InvalidArgument, "initial must be zero or static");
    *out = new fe_trace{fenet::simulate(inst, cfg), std::move(reference)};
  });
}

fe_status fe_trace_render(const fe_instance* inst, const fe_trace* tr, const char* format, char** out) {
  return guard([&] {
    need(inst, "instance");
    need(tr, "trace");
    need(format, "format");
    need(out, "out");
    const std::string f = format;
    if (tr->trace.fingerprint != fenet::fc_fingerprint(inst->inst))
      fail(ErrorKind::InvalidArgument, "trace was produced for a different instance");
    if (f == "csv")
      *out = dup(fenet::trace_csv(tr->trace));
    else if (f == "summary.json")
      *out = dup(fenet::trace_summary_json(tr->trace, fenet::compare_to_static(tr->trace, inst->inst, tr->reference)));
    else
      fail(ErrorKind::InvalidArgument, "unknown trace format '" + f + "'");
  });
}

void fe_trace_free(fe_trace* tr) { delete tr; }

fe_status fe_sweep_alpha(const char* config_json, const char* alphas, int scale_exponent, char** csv, char** svg,
                         char** summary) {
  return guard([&] {
    need(alphas, "alphas");
    const fenet::Scale s = fenet::Scale::from_exponent(scale_exponent);
    auto cfg = synthetic_config(parse_params(config_json));
    std::vector<std::string> grid;
    std::stringstream ss(alphas);
    for (std::string a; std::getline(ss, a, ',');) {
      if (a.empty()) fail(ErrorKind::InvalidArgument, "empty alpha in grid");
      const fenet::Quantity v = fenet::parse_decimal(a, s);
      if (v < 0 || v > s.factor()) fail(ErrorKind::InvalidArgument, "alpha " + a + " is outside [0, 1]");
      grid.push_back(a);
    }
    if (grid.empty()) fail(ErrorKind::InvalidArgument, "empty alpha grid");
    auto rows = fenet::sweep_alpha(cfg, grid, s);
    put(csv, fenet::sweep_csv(rows, s));
    put(svg, fenet::sweep_svg(rows, s));
    if (summary != nullptr) {
      ojson doc;
      doc["seed"] = cfg.seed;
      doc["points"] = rows.size();
      doc["spearman"] = rows.size() >= 2 ? fenet::sweep_spearman(rows, s) : 0.0;
      *summary = dup(doc.dump(2) + "\n");
    }
  });
}

}  // extern "C"
