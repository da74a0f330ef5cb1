#pragma once

// Sequential reference implementations used to check simulated results.

#include <cstdint>
#include <deque>
#include <numeric>
#include <vector>

#include "gravfm/graph.hpp"

namespace gravfm::oracle {

/// Minimum vertex id of each weakly connected component.
inline std::vector<VertexId> wcc_min_labels(const Graph& g) {
  std::vector<VertexId> parent(g.num_vertices());
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId v) {
    while (parent[v] != v) {
      parent[v] = parent[parent[v]];
      v = parent[v];
    }
    return v;
  };
  for (VertexId u = 0; u < g.num_vertices(); ++u) {
    for (VertexId w : g.neighbors(u)) {
      const VertexId a = find(u), b = find(w);
      // Root at the smaller id so the root is the component minimum.
      if (a < b) parent[b] = a;
      else if (b < a) parent[a] = b;
    }
  }
  std::vector<VertexId> label(g.num_vertices());
  for (VertexId v = 0; v < g.num_vertices(); ++v) label[v] = find(v);
  return label;
}

/// Minimum label reachable along directed edges: what label propagation over
/// out-edges converges to. Equals wcc_min_labels on symmetric graphs.
inline std::vector<VertexId> min_reaching_labels(const Graph& g) {
  std::vector<VertexId> label(g.num_vertices());
  std::iota(label.begin(), label.end(), VertexId{0});
  bool changed = true;
  while (changed) {
    changed = false;
    for (VertexId u = 0; u < g.num_vertices(); ++u) {
      for (VertexId w : g.neighbors(u)) {
        if (label[u] < label[w]) {
          label[w] = label[u];
          changed = true;
        }
      }
    }
  }
  return label;
}

struct BfsResult {
  std::vector<std::int64_t> level;  // -1 unreached
  std::vector<VertexId> parent;     // smallest-id parent on the previous level
};

inline BfsResult bfs(const Graph& g, VertexId root) {
  constexpr VertexId none = ~VertexId{0};
  BfsResult r{std::vector<std::int64_t>(g.num_vertices(), -1), std::vector<VertexId>(g.num_vertices(), none)};
  std::deque<VertexId> frontier{root};
  r.level[root] = 0;
  r.parent[root] = root;
  while (!frontier.empty()) {
    const VertexId u = frontier.front();
    frontier.pop_front();
    for (VertexId w : g.neighbors(u)) {
      if (r.level[w] == -1) {
        r.level[w] = r.level[u] + 1;
        r.parent[w] = u;
        frontier.push_back(w);
      } else if (r.level[w] == r.level[u] + 1 && u < r.parent[w]) {
        r.parent[w] = u;
      }
    }
  }
  return r;
}

/// Synchronous power iteration without dangling-mass redistribution:
/// r' = (1-d)/N + d * sum over in-edges of r(u)/outdeg(u), starting at 1/N.
inline std::vector<double> pagerank(const Graph& g, double damping, unsigned iterations) {
  const std::size_t n = g.num_vertices();
  std::vector<double> rank(n, 1.0 / static_cast<double>(n)), next(n);
  for (unsigned it = 0; it < iterations; ++it) {
    std::fill(next.begin(), next.end(), 0.0);
    for (VertexId u = 0; u < n; ++u) {
      const auto nbrs = g.neighbors(u);
      for (VertexId w : nbrs) next[w] += rank[u] / static_cast<double>(nbrs.size());
    }
    for (auto& x : next) x = (1.0 - damping) / static_cast<double>(n) + damping * x;
    rank.swap(next);
  }
  return rank;
}

}  // namespace gravfm::oracle
