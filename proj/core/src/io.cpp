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

#include "patrol/io.hpp"

#include <fstream>
#include <sstream>

namespace patrol {

namespace {

std::string IdOf(const nlohmann::json& v) {
  return v.is_string() ? v.get<std::string>() : v.dump();
}

}  // namespace

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json ReducedGraphToJson(const ReducedGraph& r) {
  Json j;
  j["vertices"] = r.ids;
  Json arcs = Json::array(), weights = Json::array(), paths = Json::array();
  bool have_paths = false;
  for (int i = 0; i < r.m(); ++i) {
    for (int k = 0; k < r.m(); ++k) {
      if (i == k || !r.arc(i, k)) continue;
      arcs.push_back({r.ids[i], r.ids[k]});
      weights.push_back(r.weight(i, k));
      const auto* bp = r.back_paths.empty() ? nullptr : &r.back_paths[i * r.m() + k];
      paths.push_back(bp ? Json(*bp) : Json::array());
      have_paths = have_paths || (bp && !bp->empty());
    }
  }
  j["arcs"] = arcs;
  j["weights"] = weights;
  Json targets = Json::array();
  for (int i = 0; i < r.m(); ++i) {
    targets.push_back({{"id", r.ids[i]}, {"d", r.d[i]}, {"v_p", r.v_p[i]}, {"v_i", r.v_i[i]}});
  }
  j["targets"] = targets;
  j["epsilon"] = r.epsilon;
  if (have_paths) j["back_paths"] = paths;
  if (!r.unreachable.empty()) {
    Json un = Json::array();
    for (auto [a, b] : r.unreachable) un.push_back({r.ids[a], r.ids[b]});
    j["unreachable"] = un;
  }
  return j;
}

ReducedGraph ParseReducedGraphJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  try {
    std::vector<std::string> ids;
    for (const auto& v : j.at("vertices")) ids.push_back(IdOf(v));
    std::vector<int> d(ids.size(), 0);
    ReducedGraph r = MakeReducedGraph(ids, d);
    r.epsilon = j.value("epsilon", 1.0);
    auto lookup = [&](const nlohmann::json& v) {
      const int idx = r.index_of(IdOf(v));
      if (idx < 0) throw InputError("unknown vertex id '" + IdOf(v) + "'");
      return idx;
    };
    std::vector<bool> seen(ids.size(), false);
    for (const auto& t : j.at("targets")) {
      const int v = lookup(t.at("id"));
      seen[v] = true;
      r.d[v] = t.at("d").get<int>();
      r.v_p[v] = t.value("v_p", 1.0);
      r.v_i[v] = t.value("v_i", 1.0);
    }
    std::vector<std::string> violations;
    for (size_t v = 0; v < ids.size(); ++v) {
      if (!seen[v]) violations.push_back("targets: every vertex of G' must be a target ('" + ids[v] + "')");
    }
    const auto& arcs = j.at("arcs");
    const auto& weights = j.at("weights");
    if (arcs.size() != weights.size()) {
      throw InputError("weights: must be parallel to arcs");
    }
    const bool has_paths = j.contains("back_paths");
    for (size_t k = 0; k < arcs.size(); ++k) {
      if (!arcs[k].is_array() || arcs[k].size() != 2) {
        throw InputError("arcs: each arc must be [from, to]");
      }
      const int a = lookup(arcs[k][0]), b = lookup(arcs[k][1]);
      SetReducedArc(r, a, b, weights[k].get<int>());
      if (has_paths) {
        r.back_paths[a * r.m() + b] = j.at("back_paths").at(k).get<std::vector<std::string>>();
      }
    }
    for (const auto& v : ValidateReduced(r)) violations.push_back(v);
    if (!violations.empty()) throw ValidationError(violations);
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("schema error: ") + e.what());
  }
}

ReducedGraph LoadReducedGraph(const std::string& path) {
  const std::string text = ReadFile(path);
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    bool weighted = false;
    try {
      weighted = nlohmann::json::parse(text).contains("weights");
    } catch (const nlohmann::json::exception& e) {
      throw InputError(std::string("parse error: ") + e.what());
    }
    if (weighted) return ParseReducedGraphJson(text);
  }
  return Reduce(LoadInstance(path));
}

Json StrategyToJson(const MarkovStrategy& s, const PatrolInstance& g) {
  Json j;
  j["vertices"] = g.ids;
  Json alpha = Json::object();
  for (int i = 0; i < s.n; ++i) {
    Json row = Json::object();
    for (int k = 0; k < s.n; ++k) {
      if (s.at(i, k) != 0.0) row[g.ids[k]] = s.at(i, k);
    }
    alpha[g.ids[i]] = row;
  }
  j["alpha"] = alpha;
  return j;
}

MarkovStrategy StrategyFromJson(const Json& j, const PatrolInstance& g) {
  MarkovStrategy s;
  s.n = g.n();
  s.alpha.assign(static_cast<size_t>(s.n) * s.n, 0.0);
  try {
    for (const auto& [from, row] : j.at("alpha").items()) {
      const int i = g.index_of(from);
      if (i < 0) throw InputError("strategy: unknown vertex '" + from + "'");
      for (const auto& [to, p] : row.items()) {
        const int k = g.index_of(to);
        if (k < 0) throw InputError("strategy: unknown vertex '" + to + "'");
        s.at(i, k) = p.get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("strategy schema error: ") + e.what());
  }
  const auto violations = ValidateStrategy(s, g, 1e-6);
  if (!violations.empty()) throw ValidationError(violations);
  return s;
}

Json SearchResultToJson(const SearchResult& res, const ReducedGraph& r) {
  Json j;
  j["verdict"] = VerdictName(res.verdict);
  if (res.cycle) {
    Json seq = Json::array();
    for (int v : res.cycle->seq) seq.push_back(r.ids[v]);
    j["cycle"] = seq;
    j["temporal_length"] = res.cycle->temporal_length;
    bool liftable = !r.back_paths.empty();
    for (size_t k = 1; liftable && k < res.cycle->seq.size(); ++k) {
      const int a = res.cycle->seq[k - 1], b = res.cycle->seq[k];
      liftable = a == b || !r.back_paths[a * r.m() + b].empty();
    }
    if (liftable) j["lifted_cycle"] = LiftCycle(res.cycle->seq, r);
  } else {
    j["cycle"] = nullptr;
    j["temporal_length"] = nullptr;
  }
  j["nodes_expanded"] = res.nodes_expanded;
  j["elapsed_ms"] = res.elapsed_ms;
  return j;
}

Json ReducedInstanceToJson(const ReducedInstance& r) {
  Json j;
  j["removed_vertices"] = r.removed_vertices;
  j["kept_vertices"] = r.base.ids;
  Json vt = Json::object();
  for (int t : r.base.targets()) {
    Json list = Json::array();
    for (int z : r.vt[t]) list.push_back(r.base.ids[z]);
    vt[r.base.ids[t]] = list;
  }
  j["V_t"] = vt;
  j["subproblems"] = r.SubproblemCount();
  return j;
}

Json ActionTableToJson(const std::vector<ActionValue>& table, const PatrolInstance& g) {
  Json out = Json::array();
  for (const auto& av : table) {
    out.push_back({{"action", ActionName(av.action, g)},
                   {"capture", av.capture},
                   {"intruder_eu", av.eu.intruder},
                   {"patroller_eu", av.eu.patroller}});
  }
  return out;
}

Json EquilibriumToJson(const EquilibriumResult& res) {
  Json j;
  j["stage"] = StageName(res.stage);
  j["det_verdict"] = res.det_verdict;
  switch (res.kind) {
    case StrategyKind::kDeterministic:
      j["strategy"] = {{"kind", "deterministic"}, {"cycle", res.cycle}};
      break;
    case StrategyKind::kMixed: {
      Json s = StrategyToJson(res.strategy, res.reduced->base);
      s["kind"] = "mixed";
      j["strategy"] = s;
      break;
    }
    case StrategyKind::kNone:
      j["strategy"] = nullptr;
      break;
  }
  if (res.kind == StrategyKind::kNone) {
    j["intruder_response"] = nullptr;
  } else if (res.kind == StrategyKind::kMixed) {
    j["intruder_response"] = ActionName(res.intruder_response, res.reduced->base);
  } else {
    j["intruder_response"] = "stay-out";
  }
  j["patroller_eu"] = res.patroller_eu;
  j["intruder_eu"] = res.intruder_eu;
  j["covers_all_targets"] = res.covers_all_targets;
  j["uncovered"] = res.uncovered;
  if (res.minmax_u) j["minmax_u"] = *res.minmax_u;
  j["subproblems"] = res.subproblems;
  j["subproblems_feasible"] = res.subproblems_feasible;
  if (res.reduced) {
    const auto& g = res.reduced->base;
    Json slacks = Json::array();
    for (const auto& s : res.slacks) {
      slacks.push_back({{"action", ActionName(s.action, g)}, {"slack", s.slack}});
    }
    j["slacks"] = slacks;
    j["actions"] = ActionTableToJson(res.action_table, g);
    j["dominance"] = ReducedInstanceToJson(*res.reduced);
  }
  j["dropped"] = res.dropped;
  j["warnings"] = res.warnings;
  return j;
}

Json BenchReportToJson(const BenchReport& report) {
  Json j;
  j["header"] = report.header;
  Json det = Json::array();
  for (const auto& c : report.det) {
    det.push_back({{"config", c.config},       {"n", c.n},
                   {"trials", c.trials},       {"feasible", c.feasible},
                   {"infeasible", c.infeasible}, {"timeout", c.timeout},
                   {"verify_failures", c.verify_failures},
                   {"termination_pct", c.termination_pct},
                   {"mean_ms", c.mean_ms},     {"std_ms", c.std_ms},
                   {"max_ms", c.max_ms},       {"min_ms", c.min_ms}});
  }
  j["det"] = det;
  Json mixed = Json::array();
  for (const auto& r : report.mixed) {
    Json row = {{"name", r.name},         {"vertices", r.vertices},
                {"targets", r.targets},   {"complete", r.complete},
                {"reduced_p", r.reduced_p}, {"reduced_pi", r.reduced_pi},
                {"count_ok", r.count_ok}};
    if (!r.stage.empty()) {
      row["stage"] = r.stage;
      row["patroller_eu"] = r.patroller_eu;
      row["solve_ms"] = r.solve_ms;
    }
    mixed.push_back(row);
  }
  j["mixed"] = mixed;
  return j;
}

}  // namespace patrol
