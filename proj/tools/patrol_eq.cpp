// Copyright 2026 The patrol-eq Authors. All rights reserved.
//
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

// patrol_eq: command-line front end. Every subcommand prints one JSON
// document on stdout; --pretty switches to a human-readable rendering.

#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "patrol/det_search.hpp"
#include "patrol/dominance.hpp"
#include "patrol/equilibrium.hpp"
#include "patrol/genbench.hpp"
#include "patrol/io.hpp"
#include "patrol/parallel.hpp"
#include "patrol/reduction.hpp"

namespace {

using patrol::Json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitResource = 2;

struct Options {
  bool pretty = false;
  int jobs = 0;
  std::optional<std::uint64_t> seed;

  int Jobs() const { return jobs > 0 ? jobs : patrol::DefaultJobs(); }
  // Draws and records a seed when none was given.
  std::uint64_t Seed() {
    if (!seed) {
      std::random_device rd;
      seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
      spdlog::info("no --seed given, using {}", *seed);
    }
    return *seed;
  }
};

std::string RenderPretty(const Json& j) {
  std::ostringstream os;
  size_t width = 0;
  for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
  for (const auto& [k, v] : j.items()) {
    os << k << std::string(width - k.size() + 2, ' ');
    if (v.is_structured()) {
      std::string body = v.dump(2);
      std::string pad = "\n" + std::string(width + 2, ' ');
      size_t pos = 0;
      while ((pos = body.find('\n', pos)) != std::string::npos) {
        body.replace(pos, 1, pad);
        pos += pad.size();
      }
      os << body << "\n";
    } else {
      os << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
  return os.str();
}

void Emit(const std::string& command, const Json& body, const Options& opt) {
  Json out;
  out["schema_version"] = patrol::kSchemaVersion;
  out["command"] = command;
  for (const auto& [k, v] : body.items()) out[k] = v;
  if (opt.pretty) {
    std::cout << RenderPretty(out);
  } else {
    std::cout << out.dump() << "\n";
  }
}

void EmitError(const std::string& kind, const std::string& message,
               const std::vector<std::string>& violations = {}) {
  Json err = {{"kind", kind}, {"message", message}};
  if (!violations.empty()) err["violations"] = violations;
  Json out;
  out["schema_version"] = patrol::kSchemaVersion;
  out["error"] = err;
  std::cout << out.dump() << "\n";
}

bool HasWeights(const std::string& path) {
  const std::string text = patrol::ReadFile(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos || text[first] != '{') return false;
  try {
    return nlohmann::json::parse(text).contains("weights");
  } catch (const nlohmann::json::exception&) {
    return false;
  }
}

patrol::PatrolInstance LoadFullInstance(const std::string& path) {
  if (HasWeights(path)) {
    throw patrol::InputError("'" + path + "' is a reduced graph; this command needs a full instance");
  }
  return patrol::LoadInstance(path);
}

// --- subcommands -----------------------------------------------------------

int RunReduce(const std::string& path, Options& opt) {
  const auto g = LoadFullInstance(path);
  const auto r = patrol::Reduce(g);
  Emit("reduce", patrol::ReducedGraphToJson(r), opt);
  return kExitOk;
}

struct DetFlags {
  std::string heuristic = "min_visits";
  bool rtb = true, lsc = true, ifc = true;
  double budget = 60.0;
  std::string root;
};

int RunSolveDet(const std::string& path, const DetFlags& f, Options& opt) {
  const auto r = patrol::LoadReducedGraph(path);
  patrol::SearchConfig c;
  c.heuristic = patrol::ParseHeuristic(f.heuristic);
  c.rtb = f.rtb;
  c.lsc = f.lsc;
  c.ifc = f.ifc;
  c.time_budget_s = f.budget;
  c.rng_seed = opt.Seed();
  if (!f.root.empty()) {
    c.root = r.index_of(f.root);
    if (c.root < 0) throw patrol::InputError("--root: unknown target '" + f.root + "'");
  }
  const auto res = patrol::FindDeterministicStrategy(r, c);
  Json body = patrol::SearchResultToJson(res, r);
  body["config"] = patrol::DescribeConfig(c);
  body["seed"] = c.rng_seed;
  Emit("solve-det", body, opt);
  return res.verdict == patrol::Verdict::kTimeout ? kExitResource : kExitOk;
}

int RunDominance(const std::string& path, std::size_t cap, Options& opt) {
  const auto g = LoadFullInstance(path);
  auto red = patrol::RemoveDominatedPatrollerActions(g, patrol::AllPairsShortestPaths(g));
  if (!red) {
    Emit("dominance", Json{{"disconnected", true}}, opt);
    return kExitOk;
  }
  patrol::FillNondominated(*red, cap, opt.Jobs());
  Json body = patrol::ReducedInstanceToJson(*red);
  body["disconnected"] = false;
  body["complete_subproblems"] = static_cast<int>(g.targets().size()) * g.n();
  Emit("dominance", body, opt);
  return kExitOk;
}

struct SolveFlags {
  std::string shortcut = "auto";
  bool drop = false;
  std::string drop_mode = "mixed";
  int starts = 32;
  int max_iters = 400;
  double budget = 60.0;
  bool diagnostics = false;
  std::string trace;
};

int RunSolve(const std::string& path, const SolveFlags& f, Options& opt) {
  const auto g = LoadFullInstance(path);
  patrol::PipelineConfig pc;
  const std::uint64_t seed = opt.Seed();
  pc.det.rng_seed = seed;
  pc.det.time_budget_s = f.budget;
  pc.nlp.rng_seed = seed;
  pc.nlp.starts = f.starts;
  pc.nlp.max_iters = f.max_iters;
  pc.jobs = opt.Jobs();
  pc.nlp.jobs = opt.Jobs();
  pc.diagnostics = f.diagnostics;
  if (f.shortcut == "on") pc.shortcut = patrol::ShortcutMode::kOn;
  else if (f.shortcut == "off") pc.shortcut = patrol::ShortcutMode::kOff;
  if (f.drop) {
    pc.drop = f.drop_mode == "deterministic" ? patrol::DropMode::kDeterministic
                                             : patrol::DropMode::kMixed;
  }
  std::ofstream trace;
  std::mutex trace_mu;
  if (!f.trace.empty()) {
    trace.open(f.trace);
    if (!trace) throw patrol::InputError("cannot write '" + f.trace + "'");
    pc.nlp.trace = [&](const std::string& line) {
      std::lock_guard<std::mutex> lock(trace_mu);
      trace << line << "\n";
    };
  }
  const auto res = patrol::SolveWithTargetDropping(g, pc);
  Json body = patrol::EquilibriumToJson(res);
  body["seed"] = seed;
  for (const auto& w : res.warnings) spdlog::warn("{}", w);
  Emit("solve", body, opt);
  return kExitOk;
}

struct ProbeFlags {
  std::string strategy;
  std::string action;
  int trials = 0;
};

// Exact capture probability and utilities of one action, optionally next to
// a simulated estimate.
int RunProbe(const std::string& instance_path, const ProbeFlags& f, Options& opt) {
  const auto full = LoadFullInstance(instance_path);
  if (f.action.empty()) throw patrol::InputError("verify: --strategy needs --action");
  Json j;
  try {
    j = Json::parse(patrol::ReadFile(f.strategy));
  } catch (const nlohmann::json::exception& e) {
    throw patrol::InputError(std::string("strategy parse error: ") + e.what());
  }
  const Json& sj = j.contains("alpha") ? j : j.at("strategy");
  std::vector<int> keep;
  for (const auto& v : sj.at("vertices")) {
    const int idx = full.index_of(v.get<std::string>());
    if (idx < 0) throw patrol::InputError("strategy names unknown vertex '" + v.get<std::string>() + "'");
    keep.push_back(idx);
  }
  const auto g = patrol::InducedSubgraph(full, keep);
  const auto s = patrol::StrategyFromJson(sj, g);
  const auto a = patrol::ParseAction(f.action, g);
  const auto eu = patrol::ActionUtilities(s, a, g);
  Json body;
  body["action"] = patrol::ActionName(a, g);
  if (!a.stay_out) body["capture_probability"] = patrol::CaptureProbability(s, a.t, a.z, g);
  body["intruder_eu"] = eu.intruder;
  body["patroller_eu"] = eu.patroller;
  if (f.trials > 0 && !a.stay_out) {
    const std::uint64_t seed = opt.Seed();
    body["simulated_capture"] = patrol::Simulate(s, a, g, f.trials, seed);
    body["trials"] = f.trials;
    body["seed"] = seed;
  }
  Emit("verify", body, opt);
  return kExitOk;
}

int RunVerify(const std::string& instance_path, const std::string& result_path, Options& opt) {
  const auto g = LoadFullInstance(instance_path);
  Json result;
  try {
    result = Json::parse(patrol::ReadFile(result_path));
  } catch (const nlohmann::json::exception& e) {
    throw patrol::InputError(std::string("result parse error: ") + e.what());
  }
  if (!result.contains("strategy") || result["strategy"].is_null()) {
    throw patrol::InputError("result carries no strategy");
  }
  const Json& strat = result["strategy"];
  Json body;
  if (strat.value("kind", "mixed") == "deterministic") {
    const auto cycle = strat.at("cycle").get<std::vector<std::string>>();
    const bool ok = patrol::CheckLiftedCycle(cycle, g);
    body["kind"] = "deterministic";
    body["valid"] = ok;
    body["consistent"] = ok;
    Emit("verify", body, opt);
    return kExitOk;
  }

  std::vector<int> keep;
  const Json& kept = result.contains("dominance") ? result["dominance"]["kept_vertices"]
                                                  : strat.at("vertices");
  for (const auto& v : kept) {
    const int idx = g.index_of(v.get<std::string>());
    if (idx < 0) throw patrol::InputError("result names unknown vertex '" + v.get<std::string>() + "'");
    keep.push_back(idx);
  }
  patrol::ReducedInstance r = patrol::Unreduced(patrol::InducedSubgraph(g, keep));
  if (result.contains("dominance")) {
    for (const auto& [t, list] : result["dominance"]["V_t"].items()) {
      const int ti = r.base.index_of(t);
      if (ti < 0) throw patrol::InputError("V_t names unknown target '" + t + "'");
      r.vt[ti].clear();
      for (const auto& z : list) r.vt[ti].push_back(r.base.index_of(z.get<std::string>()));
    }
  }
  const auto s = patrol::StrategyFromJson(strat, r.base);
  patrol::EquilibriumResult check;
  patrol::AttachMixedDiagnostics(check, r, s);
  const double dp = std::abs(check.patroller_eu - result.value("patroller_eu", 0.0));
  const double di = std::abs(check.intruder_eu - result.value("intruder_eu", 0.0));
  const std::string response = patrol::ActionName(check.intruder_response, r.base);
  const bool same_response = response == result.value("intruder_response", std::string());
  constexpr double kRoundTrip = 1e-8;
  body["kind"] = "mixed";
  body["intruder_response"] = response;
  body["patroller_eu"] = check.patroller_eu;
  body["intruder_eu"] = check.intruder_eu;
  body["covers_all_targets"] = check.covers_all_targets;
  body["max_eu_diff"] = std::max(dp, di);
  body["response_matches"] = same_response;
  body["consistent"] = same_response && std::max(dp, di) <= kRoundTrip;
  Emit("verify", body, opt);
  return kExitOk;
}

int RunGenerate(int n, int m, Options& opt) {
  patrol::GenSpec spec{n, m, opt.Seed()};
  Json body = patrol::ReducedGraphToJson(patrol::GenerateInstance(spec));
  body["seed"] = spec.rng_seed;
  Emit("generate", body, opt);
  return kExitOk;
}

void EmitReport(const std::string& command, const patrol::BenchReport& rep,
                const std::string& out_path, Options& opt) {
  Json body = patrol::BenchReportToJson(rep);
  body["seed"] = *opt.seed;
  if (!out_path.empty()) {
    std::ofstream out(out_path);
    if (!out) throw patrol::InputError("cannot write '" + out_path + "'");
    Json doc;
    doc["schema_version"] = patrol::kSchemaVersion;
    doc["command"] = command;
    for (const auto& [k, v] : body.items()) doc[k] = v;
    out << doc.dump(2) << "\n";
  }
  if (opt.pretty) {
    std::cout << patrol::RenderTable(rep);
  } else {
    Emit(command, body, opt);
  }
}

int RunBenchDet(const std::vector<std::string>& configs, const std::vector<int>& sizes,
                int trials, double budget, const std::string& out_path, Options& opt) {
  patrol::DetBenchSpec spec;
  for (const auto& c : configs) spec.configs.push_back(patrol::ParseConfigSpec(c));
  spec.sizes = sizes;
  spec.trials = trials;
  spec.budget_s = budget;
  spec.seed = opt.Seed();
  spec.jobs = opt.Jobs();
  EmitReport("bench-det", patrol::RunDetBenchmark(spec), out_path, opt);
  return kExitOk;
}

int RunBenchMixed(const std::string& dir, bool solve, const std::string& out_path, Options& opt) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw patrol::InputError("'" + dir + "' is not a directory");
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto ext = e.path().extension();
    if (e.is_regular_file() && (ext == ".json" || ext == ".grid")) files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<std::pair<std::string, patrol::PatrolInstance>> instances;
  for (const auto& p : files) {
    if (HasWeights(p.string())) {
      spdlog::info("skipping reduced graph {}", p.string());
      continue;
    }
    instances.emplace_back(p.stem().string(), patrol::LoadInstance(p.string()));
  }
  patrol::MixedBenchSpec spec;
  spec.solve = solve;
  spec.seed = opt.Seed();
  spec.jobs = opt.Jobs();
  EmitReport("bench-mixed", patrol::RunMixedBenchmark(instances, spec), out_path, opt);
  return kExitOk;
}

void ConfigureLogging() {
  auto logger = spdlog::stderr_color_mt("patrol_eq");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("PATROL_EQ_LOG")) {
    spdlog::set_level(spdlog::level::from_str(env));
  }
}

}  // namespace

int main(int argc, char** argv) {
  ConfigureLogging();
  CLI::App app{"Equilibrium patrolling strategies for a single patroller"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_flag("--pretty", opt.pretty, "Human-readable output instead of JSON");
  app.add_option("--jobs", opt.jobs, "Worker threads (default: all cores)");

  auto seed_opt = [&](CLI::App* sub) {
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](const std::uint64_t& s) { opt.seed = s; }, "RNG seed");
  };

  std::string instance, result, fixtures, out_path;
  auto* reduce = app.add_subcommand("reduce", "Build the target-only graph G'");
  reduce->add_option("--instance", instance, "Instance file (JSON or grid)")->required();

  DetFlags det;
  auto* solve_det = app.add_subcommand("solve-det", "Search for a deterministic cycle");
  solve_det->add_option("--instance", instance, "Instance or reduced-graph file")->required();
  solve_det->add_option("--heuristic", det.heuristic, "lex|random|max_arcs|min_arcs|min_visits|max_d|min_d");
  solve_det->add_flag("--rtb,!--no-rtb", det.rtb, "Random tie-break");
  solve_det->add_flag("--lsc,!--no-lsc", det.lsc, "Length stopping criterion");
  solve_det->add_flag("--ifc,!--no-ifc", det.ifc, "Initial forward check");
  solve_det->add_option("--budget", det.budget, "Time budget in seconds");
  solve_det->add_option("--root", det.root, "Force the first target of the cycle");
  seed_opt(solve_det);

  std::size_t cap = patrol::kDefaultNodeCap;
  auto* dominance = app.add_subcommand("dominance", "Remove dominated actions");
  dominance->add_option("--instance", instance, "Instance file")->required();
  dominance->add_option("--node-cap", cap, "Tree node cap per target");

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Full equilibrium pipeline");
  solve->add_option("--instance", instance, "Instance file")->required();
  solve->add_option("--strictly-competitive", sf.shortcut, "auto|on|off")
      ->check(CLI::IsMember({"auto", "on", "off"}));
  solve->add_flag("--drop-targets", sf.drop, "Drop targets until a covering strategy exists");
  solve->add_option("--drop-mode", sf.drop_mode, "deterministic|mixed")
      ->check(CLI::IsMember({"deterministic", "mixed"}));
  solve->add_option("--starts", sf.starts, "Multi-starts per program")->check(CLI::PositiveNumber);
  solve->add_option("--max-iters", sf.max_iters, "Inner iterations per round");
  solve->add_option("--budget", sf.budget, "Deterministic search budget (s)");
  solve->add_flag("--diagnostics", sf.diagnostics, "Cross-check the strictly competitive shortcut");
  solve->add_option("--trace", sf.trace, "Write per-start solver traces (JSON lines)");
  seed_opt(solve);

  ProbeFlags probe;
  auto* verify = app.add_subcommand("verify", "Re-evaluate a solve result or probe one action");
  verify->add_option("--instance", instance, "Instance file")->required();
  auto* result_opt = verify->add_option("--result", result, "Output of solve");
  auto* strategy_opt = verify->add_option("--strategy", probe.strategy, "Strategy JSON (or a solve result)");
  verify->add_option("--action", probe.action, "stay-out | enter-when(t,z)")->needs(strategy_opt);
  verify->add_option("--simulate", probe.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
  strategy_opt->excludes(result_opt);
  seed_opt(verify);

  int n = 0, m = 0;
  auto* generate = app.add_subcommand("generate", "Random reduced graph");
  generate->add_option("--n", n, "Vertices")->required();
  generate->add_option("--m", m, "Arcs, self-loops excluded")->required();
  seed_opt(generate);

  std::vector<std::string> configs{"min_visits+rtb+lsc+ifc", "lex+lsc+ifc"};
  std::vector<int> sizes{3, 4, 5, 6, 7, 8};
  int trials = 100;
  double budget = 60.0;
  auto* bench_det = app.add_subcommand("bench-det", "Deterministic search benchmark");
  bench_det->add_option("--config", configs, "e.g. min_visits+rtb+lsc+ifc (repeatable)");
  bench_det->add_option("--sizes", sizes, "Vertex counts")->delimiter(',');
  bench_det->add_option("--trials", trials, "Trials per cell")->check(CLI::PositiveNumber);
  bench_det->add_option("--budget", budget, "Per-trial budget (s)");
  bench_det->add_option("--out", out_path, "Also write the JSON report here");
  seed_opt(bench_det);

  bool mixed_solve = false;
  auto* bench_mixed = app.add_subcommand("bench-mixed", "Subproblem counts on fixtures");
  bench_mixed->add_option("--fixtures", fixtures, "Directory of instance files")->required();
  bench_mixed->add_flag("--solve", mixed_solve, "Also run the full pipeline");
  bench_mixed->add_option("--out", out_path, "Also write the JSON report here");
  seed_opt(bench_mixed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    EmitError("usage", e.what());
    return kExitInput;
  }

  try {
    if (*reduce) return RunReduce(instance, opt);
    if (*solve_det) return RunSolveDet(instance, det, opt);
    if (*dominance) return RunDominance(instance, cap, opt);
    if (*solve) return RunSolve(instance, sf, opt);
    if (*verify) {
      if (!probe.strategy.empty()) return RunProbe(instance, probe, opt);
      if (result.empty()) throw patrol::InputError("verify needs --result or --strategy with --action");
      return RunVerify(instance, result, opt);
    }
    if (*generate) return RunGenerate(n, m, opt);
    if (*bench_det) return RunBenchDet(configs, sizes, trials, budget, out_path, opt);
    if (*bench_mixed) return RunBenchMixed(fixtures, mixed_solve, out_path, opt);
  } catch (const patrol::ValidationError& e) {
    EmitError("validation", e.what(), e.violations());
    return kExitInput;
  } catch (const patrol::ResourceError& e) {
    EmitError("resource", e.what());
    return kExitResource;
  } catch (const patrol::DisconnectedError& e) {
    EmitError("disconnected", e.what());
    return kExitInput;
  } catch (const patrol::InputError& e) {
    EmitError("input", e.what());
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    EmitError("input", e.what());
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    EmitError("input", e.what());
    return kExitInput;
  }
  return kExitInput;
}
