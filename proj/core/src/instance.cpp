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

#include "patrol/instance.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace patrol {

namespace {

std::string JoinViolations(const std::vector<std::string>& v) {
  std::string out = "invalid instance:";
  for (const auto& s : v) out += "\n  - " + s;
  return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : InputError(JoinViolations(violations)),
      violations_(std::move(violations)) {}

std::vector<int> PatrolInstance::targets() const {
  std::vector<int> out;
  for (int v = 0; v < n(); ++v) {
    if (is_target[v]) out.push_back(v);
  }
  return out;
}

int PatrolInstance::index_of(const std::string& id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  return it == ids.end() ? -1 : static_cast<int>(it - ids.begin());
}

double PatrolInstance::total_patroller_value() const {
  double sum = 0.0;
  for (int t : targets()) sum += patroller_value(t);
  return sum;
}

int PatrolInstance::max_deadline() const {
  int m = 0;
  for (int t : targets()) m = std::max(m, deadline(t));
  return m;
}

PatrolInstance MakeInstance(const std::vector<std::string>& ids,
                            const std::vector<std::pair<int, int>>& arcs,
                            double epsilon) {
  PatrolInstance g;
  const int n = static_cast<int>(ids.size());
  g.ids = ids;
  g.arcs.assign(static_cast<size_t>(n) * n, 0);
  g.is_target.assign(n, false);
  g.d.assign(n, std::nullopt);
  g.v_p.assign(n, std::nullopt);
  g.v_i.assign(n, std::nullopt);
  g.epsilon = epsilon;
  for (int i = 0; i < n; ++i) g.set_arc(i, i);
  for (auto [a, b] : arcs) g.set_arc(a, b);
  return g;
}

void AddUndirected(PatrolInstance& g, int i, int j) {
  g.set_arc(i, j);
  g.set_arc(j, i);
}

void MarkTarget(PatrolInstance& g, int v, int d, double v_p, double v_i) {
  g.is_target[v] = true;
  g.d[v] = d;
  g.v_p[v] = v_p;
  g.v_i[v] = v_i;
}

std::vector<std::string> Validate(const PatrolInstance& g) {
  std::vector<std::string> out;
  const int n = g.n();
  if (n == 0) out.push_back("vertices: at least one vertex is required");
  std::set<std::string> seen;
  for (const auto& id : g.ids) {
    if (!seen.insert(id).second) out.push_back("vertices: duplicate id '" + id + "'");
  }
  if (g.arcs.size() != static_cast<size_t>(n) * n) {
    out.push_back("arcs: adjacency must cover exactly V x V");
    return out;
  }
  if (g.is_target.size() != static_cast<size_t>(n) ||
      g.d.size() != static_cast<size_t>(n) ||
      g.v_p.size() != static_cast<size_t>(n) ||
      g.v_i.size() != static_cast<size_t>(n)) {
    out.push_back("targets: per-vertex tables must have one slot per vertex");
    return out;
  }
  for (int i = 0; i < n; ++i) {
    if (!g.arc(i, i)) out.push_back("arcs: missing self-loop at '" + g.ids[i] + "'");
  }
  int count = 0;
  for (int v = 0; v < n; ++v) {
    const std::string& id = g.ids[v];
    if (g.is_target[v]) {
      ++count;
      if (!g.d[v]) out.push_back("d: missing penetration time for target '" + id + "'");
      else if (*g.d[v] < 1) out.push_back("d: penetration time must be >= 1 (target '" + id + "')");
      if (!g.v_p[v]) out.push_back("v_p: missing for target '" + id + "'");
      else if (*g.v_p[v] < 0) out.push_back("v_p: must be nonnegative (target '" + id + "')");
      if (!g.v_i[v]) out.push_back("v_i: missing for target '" + id + "'");
      else if (*g.v_i[v] < 0) out.push_back("v_i: must be nonnegative (target '" + id + "')");
    } else {
      if (g.d[v]) out.push_back("d: defined on non-target '" + id + "'");
      if (g.v_p[v]) out.push_back("v_p: defined on non-target '" + id + "'");
      if (g.v_i[v]) out.push_back("v_i: defined on non-target '" + id + "'");
    }
  }
  if (count == 0) out.push_back("targets: at least one target is required");
  if (!(g.epsilon > 0)) out.push_back("epsilon: must be positive");
  return out;
}

PatrolInstance InducedSubgraph(const PatrolInstance& g,
                               const std::vector<int>& keep) {
  std::vector<std::string> ids;
  for (int v : keep) ids.push_back(g.ids[v]);
  PatrolInstance h = MakeInstance(ids, {}, g.epsilon);
  const int m = static_cast<int>(keep.size());
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (g.arc(keep[a], keep[b])) h.set_arc(a, b);
    }
    h.is_target[a] = g.is_target[keep[a]];
    h.d[a] = g.d[keep[a]];
    h.v_p[a] = g.v_p[keep[a]];
    h.v_i[a] = g.v_i[keep[a]];
  }
  return h;
}

PatrolInstance WithoutTarget(const PatrolInstance& g, int t) {
  PatrolInstance h = g;
  h.is_target[t] = false;
  h.d[t].reset();
  h.v_p[t].reset();
  h.v_i[t].reset();
  return h;
}

PatrolInstance ParseInstanceJson(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("parse error: ") + e.what());
  }
  try {
    std::vector<std::string> ids;
    for (const auto& v : j.at("vertices")) {
      ids.push_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
    PatrolInstance g = MakeInstance(ids, {}, j.value("epsilon", 1.0));
    auto lookup = [&](const nlohmann::json& v) {
      std::string id = v.is_string() ? v.get<std::string>() : v.dump();
      int idx = g.index_of(id);
      if (idx < 0) throw InputError("unknown vertex id '" + id + "'");
      return idx;
    };
    if (j.contains("arcs")) {
      for (const auto& a : j.at("arcs")) {
        if (!a.is_array() || a.size() != 2) throw InputError("arcs: each arc must be [from, to]");
        g.set_arc(lookup(a[0]), lookup(a[1]));
      }
    }
    for (const auto& t : j.at("targets")) {
      int v = lookup(t.at("id"));
      if (g.is_target[v]) throw InputError("targets: duplicate target '" + g.ids[v] + "'");
      g.is_target[v] = true;
      g.d[v] = t.at("d").get<int>();
      g.v_p[v] = t.at("v_p").get<double>();
      g.v_i[v] = t.at("v_i").get<double>();
    }
    auto violations = Validate(g);
    if (!violations.empty()) throw ValidationError(violations);
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("schema error: ") + e.what());
  }
}

std::string SaveInstanceJson(const PatrolInstance& g) {
  nlohmann::ordered_json j;
  j["vertices"] = g.ids;
  auto arcs = nlohmann::ordered_json::array();
  for (int i = 0; i < g.n(); ++i) {
    for (int k = 0; k < g.n(); ++k) {
      if (i != k && g.arc(i, k)) arcs.push_back({g.ids[i], g.ids[k]});
    }
  }
  j["arcs"] = arcs;
  auto targets = nlohmann::ordered_json::array();
  for (int t : g.targets()) {
    targets.push_back({{"id", g.ids[t]},
                       {"d", g.deadline(t)},
                       {"v_p", g.patroller_value(t)},
                       {"v_i", g.intruder_value(t)}});
  }
  j["targets"] = targets;
  j["epsilon"] = g.epsilon;
  return j.dump(2);
}

PatrolInstance LoadInstance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  std::string text = ss.str();
  auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    return ParseInstanceJson(text);
  }
  PatrolInstance g = GridToGraph(ParseGridMap(text));
  auto violations = Validate(g);
  if (!violations.empty()) throw ValidationError(violations);
  return g;
}

}  // namespace patrol
