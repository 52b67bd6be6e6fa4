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

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "patrol/instance.hpp"

namespace patrol {

namespace {

std::string Trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct RawCell {
  CellKind kind;
  std::string label;
};

std::vector<RawCell> ParseRow(const std::string& line, int lineno) {
  std::vector<RawCell> row;
  for (size_t k = 0; k < line.size();) {
    char c = line[k];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++k;
    } else if (c == '.') {
      row.push_back({CellKind::kFree, ""});
      ++k;
    } else if (c == '#') {
      row.push_back({CellKind::kObstacle, ""});
      ++k;
    } else if (c == 'T') {
      size_t e = k + 1;
      while (e < line.size() && std::isdigit(static_cast<unsigned char>(line[e]))) ++e;
      if (e == k + 1) {
        throw InputError("grid line " + std::to_string(lineno) + ": 'T' must be followed by a number");
      }
      row.push_back({CellKind::kTarget, line.substr(k, e - k)});
      k = e;
    } else {
      throw InputError("grid line " + std::to_string(lineno) + ": unexpected character '" + std::string(1, c) + "'");
    }
  }
  return row;
}

}  // namespace

GridMap ParseGridMap(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::vector<RawCell>> rows;
  std::map<std::string, GridCell> table;
  double epsilon = 1.0;
  bool in_table = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = Trim(line);
    if (s.empty() || s.rfind("//", 0) == 0) continue;
    if (s.rfind("epsilon:", 0) == 0) {
      epsilon = std::stod(s.substr(8));
      continue;
    }
    if (s == "targets:") {
      in_table = true;
      continue;
    }
    if (in_table) {
      std::istringstream ls(s);
      std::string label;
      GridCell cell;
      cell.kind = CellKind::kTarget;
      if (!(ls >> label >> cell.d >> cell.v_p >> cell.v_i)) {
        throw InputError("grid line " + std::to_string(lineno) + ": expected 'T<k> d v_p v_i'");
      }
      table[label] = cell;
      continue;
    }
    rows.push_back(ParseRow(s, lineno));
  }
  if (rows.empty()) throw InputError("grid: no rows");
  GridMap map;
  map.height = static_cast<int>(rows.size());
  map.width = static_cast<int>(rows[0].size());
  map.epsilon = epsilon;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != map.width) throw InputError("grid: rows have different widths");
    for (const auto& raw : row) {
      if (raw.kind != CellKind::kTarget) {
        GridCell c;
        c.kind = raw.kind;
        map.cells.push_back(c);
        continue;
      }
      auto it = table.find(raw.label);
      if (it == table.end()) throw InputError("grid: no table entry for " + raw.label);
      map.cells.push_back(it->second);
    }
  }
  return map;
}

PatrolInstance GridToGraph(const GridMap& map) {
  std::vector<int> index(map.cells.size(), -1);
  int n = 0;
  for (size_t k = 0; k < map.cells.size(); ++k) {
    if (map.cells[k].kind != CellKind::kObstacle) index[k] = n++;
  }
  if (n == 0) throw InputError("grid: no free cells");
  const int width = std::max<int>(2, static_cast<int>(std::to_string(n).size()));
  std::vector<std::string> ids;
  for (int v = 1; v <= n; ++v) {
    std::string s = std::to_string(v);
    ids.push_back(std::string(width - s.size(), '0') + s);
  }
  PatrolInstance g = MakeInstance(ids, {}, map.epsilon);
  for (int r = 0; r < map.height; ++r) {
    for (int c = 0; c < map.width; ++c) {
      int a = index[r * map.width + c];
      if (a < 0) continue;
      const GridCell& cell = map.at(r, c);
      if (cell.kind == CellKind::kTarget) MarkTarget(g, a, cell.d, cell.v_p, cell.v_i);
      if (c + 1 < map.width && index[r * map.width + c + 1] >= 0) {
        AddUndirected(g, a, index[r * map.width + c + 1]);
      }
      if (r + 1 < map.height && index[(r + 1) * map.width + c] >= 0) {
        AddUndirected(g, a, index[(r + 1) * map.width + c]);
      }
    }
  }
  return g;
}

}  // namespace patrol
