// Copyright 2026 The graphent Authors
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

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "graphent/error.hpp"
#include "graphent/pauli.hpp"

namespace graphent {

using Edge = std::pair<std::size_t, std::size_t>;

/// Simple undirected graph on vertices 0..n-1.
///
/// The 1-based labels used in text and JSON are converted at the I/O boundary;
/// everything in the library is 0-based.
class Graph {
 public:
  Graph() = default;

  Graph(std::size_t num_vertices, std::vector<Edge> edges)
      : n_(num_vertices), adjacency_(num_vertices, 0) {
    if (num_vertices == 0 || num_vertices > kMaxQubits) {
      throw InvalidArgument("graph vertex count must be in [1, 64]");
    }
    for (auto [a, b] : edges) {
      if (a >= n_ || b >= n_) throw InvalidArgument("edge vertex out of range");
      if (a == b) throw InvalidArgument("self-loop on vertex " + std::to_string(a + 1));
      if (a > b) std::swap(a, b);
      std::uint64_t bit = std::uint64_t{1} << b;
      if (adjacency_[a] & bit) {
        throw InvalidArgument("duplicate edge " + std::to_string(a + 1) + "-" +
                              std::to_string(b + 1));
      }
      adjacency_[a] |= bit;
      adjacency_[b] |= std::uint64_t{1} << a;
      edges_.emplace_back(a, b);
    }
    std::sort(edges_.begin(), edges_.end());
  }

  /// Chain 0-1-...-(n-1).
  static Graph path(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
    return Graph(n, std::move(e));
  }

  /// Chain visiting the given vertices in order (0-based labels).
  static Graph chain(const std::vector<std::size_t>& order) {
    std::vector<Edge> e;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      e.emplace_back(order[i], order[i + 1]);
    }
    return Graph(order.size(), std::move(e));
  }

  static Graph cycle(std::size_t n) {
    if (n < 3) throw InvalidArgument("cycle needs at least 3 vertices");
    std::vector<Edge> e;
    for (std::size_t i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
    return Graph(n, std::move(e));
  }

  static Graph star(std::size_t n) {
    std::vector<Edge> e;
    for (std::size_t i = 1; i < n; ++i) e.emplace_back(0, i);
    return Graph(n, std::move(e));
  }

  std::size_t num_vertices() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::uint64_t neighbors(std::size_t v) const { return adjacency_.at(v); }
  bool has_edge(std::size_t a, std::size_t b) const {
    return (adjacency_.at(a) >> b) & 1u;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> adjacency_;
  std::vector<Edge> edges_;
};

/// g_a = X_a prod_{b in N(a)} Z_b, one per vertex, all with sign +1.
inline std::vector<PauliString> generators(const Graph& graph) {
  std::vector<PauliString> gens;
  gens.reserve(graph.num_vertices());
  for (std::size_t a = 0; a < graph.num_vertices(); ++a) {
    gens.emplace_back(graph.num_vertices(), std::uint64_t{1} << a,
                      graph.neighbors(a));
  }
  return gens;
}

struct TwoColoring {
  std::vector<std::size_t> amber;
  std::vector<std::size_t> blue;  // never larger than amber
};

/// Bipartite coloring with the blue class as small as possible.
///
/// Each connected component is colored independently and its smaller side is
/// assigned to blue, which minimizes |B| over all proper two-colorings.
inline TwoColoring two_coloring(const Graph& graph) {
  const std::size_t n = graph.num_vertices();
  std::vector<int> color(n, -1);
  TwoColoring result;
  for (std::size_t root = 0; root < n; ++root) {
    if (color[root] != -1) continue;
    std::vector<std::size_t> side[2];
    std::queue<std::size_t> frontier;
    color[root] = 0;
    frontier.push(root);
    while (!frontier.empty()) {
      std::size_t v = frontier.front();
      frontier.pop();
      side[color[v]].push_back(v);
      std::uint64_t nb = graph.neighbors(v);
      while (nb) {
        auto w = static_cast<std::size_t>(std::countr_zero(nb));
        nb &= nb - 1;
        if (color[w] == -1) {
          color[w] = 1 - color[v];
          frontier.push(w);
        } else if (color[w] == color[v]) {
          throw NotTwoColorable("graph is not two-colorable: odd cycle through vertices " +
                                std::to_string(v + 1) + " and " +
                                std::to_string(w + 1));
        }
      }
    }
    int small = side[1].size() < side[0].size() ? 1 : 0;
    result.blue.insert(result.blue.end(), side[small].begin(), side[small].end());
    result.amber.insert(result.amber.end(), side[1 - small].begin(),
                        side[1 - small].end());
  }
  std::sort(result.amber.begin(), result.amber.end());
  std::sort(result.blue.begin(), result.blue.end());
  return result;
}

}  // namespace graphent
