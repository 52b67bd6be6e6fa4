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

#ifndef PATROL_INSTANCE_HPP_
#define PATROL_INSTANCE_HPP_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace patrol {

// Malformed input: bad syntax, unknown ids, broken invariants.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a configured resource cap (node count, memory) is exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what)
      : std::runtime_error(what) {}
};

class ValidationError : public InputError {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const { return violations_; }

 private:
  std::vector<std::string> violations_;
};

inline constexpr int kUnreachable = 1 << 29;

// Graph G = (V, A, T, v, d). Vertices are dense indices; `ids` keeps the
// original names. Per-vertex value slots are optional so that a malformed
// instance can be represented and reported by Validate().
struct PatrolInstance {
  std::vector<std::string> ids;
  std::vector<std::uint8_t> arcs;  // row-major n x n
  std::vector<bool> is_target;
  std::vector<std::optional<int>> d;
  std::vector<std::optional<double>> v_p;
  std::vector<std::optional<double>> v_i;
  double epsilon = 1.0;

  int n() const { return static_cast<int>(ids.size()); }
  bool arc(int i, int j) const { return arcs[i * n() + j] != 0; }
  void set_arc(int i, int j, bool on = true) { arcs[i * n() + j] = on; }

  // Target vertex indices in ascending index order.
  std::vector<int> targets() const;
  // -1 when absent.
  int index_of(const std::string& id) const;
  int deadline(int v) const { return d[v].value_or(0); }
  double patroller_value(int v) const { return v_p[v].value_or(0.0); }
  double intruder_value(int v) const { return v_i[v].value_or(0.0); }
  double total_patroller_value() const;
  int max_deadline() const;
};

// Builder helpers used by loaders, generators and tests. Self-loops are
// always added.
PatrolInstance MakeInstance(const std::vector<std::string>& ids,
                            const std::vector<std::pair<int, int>>& arcs,
                            double epsilon = 1.0);
void AddUndirected(PatrolInstance& g, int i, int j);
void MarkTarget(PatrolInstance& g, int v, int d, double v_p, double v_i);

std::vector<std::string> Validate(const PatrolInstance& g);

// Restriction of g to the listed vertices (induced arcs), ids preserved.
PatrolInstance InducedSubgraph(const PatrolInstance& g,
                               const std::vector<int>& keep);

// Same graph with target `t` demoted to an ordinary vertex.
PatrolInstance WithoutTarget(const PatrolInstance& g, int t);

enum class CellKind { kFree, kObstacle, kTarget };

struct GridCell {
  CellKind kind = CellKind::kFree;
  int d = 0;
  double v_p = 0.0;
  double v_i = 0.0;
};

struct GridMap {
  int width = 0;
  int height = 0;
  std::vector<GridCell> cells;  // row-major
  double epsilon = 1.0;

  const GridCell& at(int row, int col) const {
    return cells[row * width + col];
  }
};

// One vertex per free cell, numbered row-major with zero padding ("01",
// "02", ...). 4-connected plus self-loops.
PatrolInstance GridToGraph(const GridMap& map);

// Text grid: see README for the format.
GridMap ParseGridMap(const std::string& text);

// Dispatches on content: JSON object or text grid. Validates.
PatrolInstance LoadInstance(const std::string& path);
PatrolInstance ParseInstanceJson(const std::string& text);
std::string SaveInstanceJson(const PatrolInstance& g);

}  // namespace patrol

#endif  // PATROL_INSTANCE_HPP_
