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

// Batch front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fenet/fenet.h"

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 2, kInput = 3, kInternal = 4 };

struct Failure {
  int code;
  std::string message;
};

int exit_code(fe_status s) {
  switch (s) {
    case FE_OK: return kOk;
    case FE_ERR_INVALID_ARGUMENT: return kUsage;
    case FE_ERR_INVARIANT: return kInternal;
    default: return kInput;
  }
}

void check(fe_status s) {
  if (s != FE_OK) throw Failure{exit_code(s), std::string(fe_status_name(s)) + ": " + fe_last_error()};
}

// Owning wrapper for strings handed out by the library.
std::string take(char* s) {
  std::string out = s == nullptr ? "" : s;
  fe_string_free(s);
  return out;
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  Handle(Handle&& o) noexcept : p(o.p) { o.p = nullptr; }
  ~Handle() { Free(p); }
  T** out() { return &p; }
  T* get() const { return p; }
};
using Instance = Handle<fe_instance, fe_instance_free>;
using Solution = Handle<fe_solution, fe_solution_free>;
using Regions = Handle<fe_regionalization, fe_regionalization_free>;
using RegionalSolution = Handle<fe_regional_solution, fe_regional_free>;
using Trace = Handle<fe_trace, fe_trace_free>;

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kInput, "cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Collects outputs and writes the manifest last.
class Run {
 public:
  Run(std::string command, std::string out_dir, int scale) : command_(std::move(command)), dir_(std::move(out_dir)) {
    manifest_["command"] = command_;
    manifest_["version"] = fe_version();
    manifest_["scale_exponent"] = scale;
    manifest_["parameters"] = ojson::object();
    manifest_["inputs"] = ojson::array();
    manifest_["outputs"] = ojson::array();
    if (!dir_.empty()) {
      std::error_code ec;
      fs::create_directories(dir_, ec);
      if (ec) throw Failure{kInput, "cannot create " + dir_ + ": " + ec.message()};
    }
  }

  void param(const std::string& key, const std::string& value) { manifest_["parameters"][key] = value; }
  void seed(std::uint64_t s) { manifest_["seed"] = s; }

  std::string input(const std::string& path) {
    std::string bytes = read_file(path);
    manifest_["inputs"].push_back({{"path", path}, {"fnv1a64", hex(fnv1a(bytes))}, {"bytes", bytes.size()}});
    return bytes;
  }

  void output(const std::string& name, const std::string& bytes) {
    if (dir_.empty()) return;
    const std::string path = (fs::path(dir_) / name).string();
    std::ofstream out(path, std::ios::binary);
    out << bytes;
    if (!out) throw Failure{kInput, "cannot write " + path};
    manifest_["outputs"].push_back({{"path", name}, {"fnv1a64", hex(fnv1a(bytes))}, {"bytes", bytes.size()}});
  }

  void finish() {
    if (dir_.empty()) return;
    std::ofstream out((fs::path(dir_) / "manifest.json").string(), std::ios::binary);
    out << manifest_.dump(2) << "\n";
    if (!out) throw Failure{kInput, "cannot write manifest"};
  }

 private:
  std::string command_;
  std::string dir_;
  ojson manifest_;
};

struct Options {
  // generate
  std::string kind;
  std::map<std::string, std::string> gen;
  // shared
  std::string instance, regions, solution, method = "k", out;
  // simulate
  std::string dt = "0.01", routing = "greedy", initial = "zero";
  std::int64_t steps = 100000, sample_every = 0;
  // sweep
  std::string alphas = "0,0.25,0.5,0.75,1";
};

// Generator flags forwarded as JSON parameters when given.
const std::vector<std::pair<std::string, std::string>> kGenFlags = {
    {"n", "number of demands (continuous-line)"},
    {"cut", "split point (continuous-line)"},
    {"k", "number of FCs (line-lb)"},
    {"dprime", "demand at the first node (line-lb)"},
    {"L", "long edge length (line-lb, tree2, tree-r)"},
    {"eps", "short edge length (tree2, tree-r)"},
    {"r", "number of regions (tree-r)"},
    {"seed", "random seed (synthetic)"},
    {"alpha", "Voronoi share of capacity (synthetic)"},
    {"n-demands", "demand nodes (synthetic)"},
    {"n-fcs", "FCs (synthetic)"},
    {"clusters", "demand clusters (synthetic)"},
    {"headroom", "spare capacity share (synthetic)"},
};

std::string json_key(std::string flag) {
  for (char& c : flag)
    if (c == '-') c = '_';
  return flag;
}

std::string synthetic_params(const std::map<std::string, std::string>& given) {
  nlohmann::json p = nlohmann::json::object();
  for (const auto& [k, v] : given) p[json_key(k)] = v;
  return p.dump();
}

Instance load_instance(Run& run, const std::string& path, int scale) {
  Instance inst;
  const std::string bytes = run.input(path);
  check(fe_instance_from_json(bytes.c_str(), scale, inst.out()));
  return inst;
}

void print(const std::string& s) { std::cout << s << std::flush; }

void cmd_generate(const Options& o, int scale) {
  Run run("generate", o.out, scale);
  run.param("kind", o.kind);
  for (const auto& [k, v] : o.gen) run.param(k, v);
  if (o.gen.count("seed")) run.seed(std::stoull(o.gen.at("seed")));
  Instance inst;
  char* comp = nullptr;
  check(fe_generate(o.kind.c_str(), synthetic_params(o.gen).c_str(), scale, inst.out(), &comp));
  const auto companions = ojson::parse(take(comp));
  char* text = nullptr;
  check(fe_instance_to_json(inst.get(), &text));
  const std::string doc = take(text);
  run.output("instance.json", doc);
  for (auto it = companions.begin(); it != companions.end(); ++it)
    run.output(it.key() + ".regions.json", it.value().dump(2) + "\n");
  char* info = nullptr;
  check(fe_instance_info(inst.get(), &info));
  const std::string summary = take(info);
  run.output("summary.json", summary);
  run.finish();
  if (o.out.empty()) print(doc);
  else print(summary);
}

std::string render(const Instance& inst, const Solution& sol, const char* format) {
  char* s = nullptr;
  check(fe_solution_render(inst.get(), sol.get(), format, &s));
  return take(s);
}

void write_solution(Run& run, const Instance& inst, const Solution& sol) {
  run.output("assignment.csv", render(inst, sol, "assignment.csv"));
  run.output("backlogs.csv", render(inst, sol, "backlogs.csv"));
  run.output("delays.csv", render(inst, sol, "delays.csv"));
  run.output("solution.json", render(inst, sol, "json"));
}

void cmd_solve(const Options& o, int scale) {
  Run run("solve", o.out, scale);
  run.param("instance", o.instance);
  run.param("mode", o.regions.empty() ? "global" : "regionalized");
  Instance inst = load_instance(run, o.instance, scale);
  char* info_text = nullptr;
  check(fe_instance_info(inst.get(), &info_text));
  const auto info = ojson::parse(take(info_text));
  const double units = info["total_demand"].get<double>();
  const double factor = [&] {
    double f = 1;
    for (int i = 0; i < scale; ++i) f *= 10;
    return f;
  }();

  ojson summary;
  summary["mode"] = o.regions.empty() ? "global" : "regionalized";
  summary["demands"] = info["demands"];
  summary["fcs"] = info["fcs"];
  summary["total_demand"] = info["total_demand"];
  summary["scale_exponent"] = scale;
  Solution sol;
  if (o.regions.empty()) {
    check(fe_solve(inst.get(), sol.out()));
  } else {
    run.param("regions", o.regions);
    Regions reg;
    check(fe_regionalization_from_json(inst.get(), run.input(o.regions).c_str(), reg.out()));
    RegionalSolution rs;
    check(fe_solve_regionalized(inst.get(), reg.get(), rs.out()));
    char* csv = nullptr;
    check(fe_regional_render(inst.get(), rs.get(), "regions.csv", &csv));
    run.output("regions.csv", take(csv));
    check(fe_regional_flatten(inst.get(), rs.get(), sol.out()));
    summary["regions"] = fe_regionalization_regions(reg.get());
  }
  std::int64_t cost = 0, delay = 0;
  check(fe_solution_totals(sol.get(), &cost, &delay));
  write_solution(run, inst, sol);
  summary["assignment_cost_scaled"] = cost;
  summary["total_delay_scaled"] = delay;
  summary["assignment_cost"] = cost / factor;
  summary["total_delay"] = delay / factor;
  summary["delay_per_unit"] = units > 0 ? delay / factor / units : 0.0;
  summary["cost_per_unit"] = units > 0 ? cost / factor / units : 0.0;
  const std::string text = summary.dump(2) + "\n";
  run.output("summary.json", text);
  run.finish();
  print(text);
}

void cmd_regionalize(const Options& o, int scale) {
  Run run("regionalize", o.out, scale);
  run.param("instance", o.instance);
  run.param("method", o.method);
  Instance inst = load_instance(run, o.instance, scale);
  Regions reg;
  check(fe_regionalize(inst.get(), o.method.c_str(), reg.out()));
  char* text = nullptr;
  check(fe_regionalization_to_json(inst.get(), reg.get(), &text));
  run.output("regions.json", take(text));

  RegionalSolution rs;
  check(fe_solve_regionalized(inst.get(), reg.get(), rs.out()));
  char* csv = nullptr;
  check(fe_regional_render(inst.get(), rs.get(), "regions.csv", &csv));
  run.output("regions.csv", take(csv));
  ojson summary;
  summary["method"] = o.method;
  summary["regions"] = fe_regionalization_regions(reg.get());
  std::int64_t delay = 0;
  check(fe_regional_total_delay(rs.get(), &delay));
  summary["total_delay_scaled"] = delay;
  char* info = nullptr;
  check(fe_instance_info(inst.get(), &info));
  const auto inf = ojson::parse(take(info));
  if (inf.contains("ceil_log2_aspect_ratio")) summary["ceil_log2_aspect_ratio"] = inf["ceil_log2_aspect_ratio"];
  if (o.method == "line-scale" || o.method == "euclidean-scale") {
    int ok = 0;
    char* rep = nullptr;
    check(fe_regional_check_segments(inst.get(), rs.get(), &ok, &rep));
    summary["zero_backlog_per_cell"] = ojson::parse(take(rep));
  }
  const std::string s = summary.dump(2) + "\n";
  run.output("summary.json", s);
  run.finish();
  print(s);
}

void cmd_simulate(const Options& o, int scale) {
  Run run("simulate", o.out, scale);
  ojson cfg;
  cfg["dt"] = o.dt;
  cfg["steps"] = o.steps;
  cfg["sample_every"] = o.sample_every > 0 ? o.sample_every : std::max<std::int64_t>(1, o.steps / 1000);
  cfg["routing"] = o.routing;
  cfg["initial"] = o.initial;
  run.param("instance", o.instance);
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    run.param(it.key(), it->is_string() ? it->get<std::string>() : it->dump());
  Instance inst = load_instance(run, o.instance, scale);
  Trace tr;
  check(fe_simulate(inst.get(), cfg.dump().c_str(), tr.out()));
  char* csv = nullptr;
  check(fe_trace_render(inst.get(), tr.get(), "csv", &csv));
  run.output("trace.csv", take(csv));
  char* sum = nullptr;
  check(fe_trace_render(inst.get(), tr.get(), "summary.json", &sum));
  const std::string s = take(sum);
  run.output("summary.json", s);
  run.finish();
  print(s);
}

void cmd_sweep(const Options& o, int scale) {
  Run run("sweep-alpha", o.out, scale);
  run.param("alphas", o.alphas);
  for (const auto& [k, v] : o.gen) run.param(k, v);
  if (o.gen.count("alpha")) throw Failure{kUsage, "--alpha is not used by sweep-alpha; give --alphas"};
  run.seed(o.gen.count("seed") ? std::stoull(o.gen.at("seed")) : 7);
  char *csv = nullptr, *svg = nullptr, *sum = nullptr;
  check(fe_sweep_alpha(synthetic_params(o.gen).c_str(), o.alphas.c_str(), scale, &csv, &svg, &sum));
  const std::string c = take(csv);
  run.output("sweep.csv", c);
  run.output("sweep.svg", take(svg));
  run.output("summary.json", take(sum));
  run.finish();
  print(c);
}

void cmd_compare(const Options& o, int scale) {
  Run run("compare", o.out, scale);
  run.param("instance", o.instance);
  run.param("regions", o.regions);
  Instance inst = load_instance(run, o.instance, scale);
  Regions reg;
  check(fe_regionalization_from_json(inst.get(), run.input(o.regions).c_str(), reg.out()));
  char* rep = nullptr;
  check(fe_compare(inst.get(), reg.get(), &rep));
  const std::string s = take(rep);
  run.output("compare.json", s);
  run.finish();
  print(s);
}

int cmd_verify(const Options& o, int scale) {
  Run run("verify", o.out, scale);
  run.param("instance", o.instance);
  run.param("solution", o.solution);
  Instance inst = load_instance(run, o.instance, scale);
  Solution sol;
  check(fe_solution_from_json(inst.get(), run.input(o.solution).c_str(), sol.out()));
  int ok = 0;
  char* rep = nullptr;
  check(fe_solution_verify(inst.get(), sol.get(), &ok, &rep));
  const std::string s = take(rep);
  run.output("verify.json", s);
  run.finish();
  print(s);
  return ok ? kOk : kInput;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fenet: fulfillment network equilibria, regionalization and dynamics"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(fe_version()));
  Options o;

  auto* gen = app.add_subcommand("generate", "Write a generated instance");
  gen->add_option("kind", o.kind, "continuous-line, line-lb, line-noncontig, tree2, tree-r or synthetic")
      ->required()
      ->check(CLI::IsMember({"continuous-line", "line-lb", "line-noncontig", "tree2", "tree-r", "synthetic"}));
  gen->add_option("--out", o.out, "Output directory");
  for (const auto& [flag, help] : kGenFlags)
    gen->add_option_function<std::string>("--" + flag, [&o, f = flag](const std::string& v) { o.gen[f] = v; }, help);

  auto* solve = app.add_subcommand("solve", "Minimum-delay equilibrium, global or per region");
  solve->add_option("--instance", o.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  solve->add_option("--regions", o.regions, "Regionalization JSON")->check(CLI::ExistingFile);
  solve->add_option("--out", o.out, "Output directory");

  auto* regionalize = app.add_subcommand("regionalize", "Emit a regionalization");
  regionalize->add_option("--instance", o.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  regionalize->add_option("--method", o.method, "single, k, line-scale, euclidean-scale or quadrant")
      ->check(CLI::IsMember({"single", "k", "line-scale", "euclidean-scale", "quadrant"}));
  regionalize->add_option("--out", o.out, "Output directory");

  auto* simulate = app.add_subcommand("simulate", "Fluid simulation of greedy routing");
  simulate->add_option("--instance", o.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  simulate->add_option("--dt", o.dt, "Time step");
  simulate->add_option("--steps", o.steps, "Number of steps")->check(CLI::PositiveNumber);
  simulate->add_option("--sample-every", o.sample_every, "Steps between samples")->check(CLI::PositiveNumber);
  simulate->add_option("--routing", o.routing, "greedy or fixed")->check(CLI::IsMember({"greedy", "fixed"}));
  simulate->add_option("--initial", o.initial, "zero or static")->check(CLI::IsMember({"zero", "static"}));
  simulate->add_option("--out", o.out, "Output directory");

  auto* sweep = app.add_subcommand("sweep-alpha", "Delay against the Voronoi share of capacity");
  sweep->add_option("--alphas", o.alphas, "Comma separated grid in [0, 1]");
  for (const auto& [flag, help] : kGenFlags)
    if (help.find("synthetic") != std::string::npos)
      sweep->add_option_function<std::string>("--" + flag, [&o, f = flag](const std::string& v) { o.gen[f] = v; },
                                              help);
  sweep->add_option("--out", o.out, "Output directory");

  auto* compare = app.add_subcommand("compare", "Global against regionalized delay");
  compare->add_option("--instance", o.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("--regions", o.regions, "Regionalization JSON")->required()->check(CLI::ExistingFile);
  compare->add_option("--out", o.out, "Output directory");

  auto* verify = app.add_subcommand("verify", "Check a solution file against an instance");
  verify->add_option("--instance", o.instance, "Instance JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--solution", o.solution, "Solution JSON")->required()->check(CLI::ExistingFile);
  verify->add_option("--out", o.out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  try {
    int scale = 6;
    if (fe_scale_parse(nullptr, &scale) != FE_OK) throw Failure{kUsage, std::string("FE_SCALE: ") + fe_last_error()};
    if (*gen) cmd_generate(o, scale);
    else if (*solve) cmd_solve(o, scale);
    else if (*regionalize) cmd_regionalize(o, scale);
    else if (*simulate) cmd_simulate(o, scale);
    else if (*sweep) cmd_sweep(o, scale);
    else if (*compare) cmd_compare(o, scale);
    else if (*verify) return cmd_verify(o, scale);
  } catch (const Failure& f) {
    std::cerr << "fenet: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "fenet: " << e.what() << "\n";
    return kInternal;
  }
  return kOk;
}
