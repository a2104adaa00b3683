#pragma once

// Independent brute-force oracles used only by the test suites. Everything
// here works straight from the definitions (full enumeration), never through
// the library's algorithmic paths.

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "cwl/decomp.hpp"
#include "cwl/graph.hpp"
#include "cwl/minors.hpp"
#include "cwl/tiebreak.hpp"

namespace cwl::oracle {

/// Every simple path starting at `from`, reported via callback (vertex
/// sequences). Zero-length paths included.
inline void enumerate_paths_from(const Graph& g, int from,
                                 const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> path{from};
  std::vector<char> used(g.vertex_count(), 0);
  used[from] = 1;
  std::function<void()> rec = [&] {
    emit(path);
    for (int w : g.neighbors(path.back())) {
      if (used[w]) continue;
      used[w] = 1;
      path.push_back(w);
      rec();
      path.pop_back();
      used[w] = 0;
    }
  };
  rec();
}

/// Lambda-least path from v to the set X by full path enumeration.
inline std::optional<LambdaPath> lambda_least_path(const Graph& g, const TieBreaker& tb, int v,
                                                   const VertexSet& xs) {
  std::optional<LambdaPath> best;
  enumerate_paths_from(g, v, [&](const std::vector<int>& path) {
    // Only paths whose single contact with X is the far end (or v itself in X).
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (set_contains(xs, path[i])) return;
    if (!set_contains(xs, path.back())) return;
    LambdaPath cand{path};
    if (!best || lambda_compare(g, tb, cand, *best) < 0) best = cand;
  });
  return best;
}

/// Path-width as the minimum over all vertex orderings of the maximum
/// prefix boundary (the vertex-separation formulation, exhaustively).
inline int pathwidth_by_orderings(const Graph& g) {
  const int n = g.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int best = n;
  do {
    std::vector<char> placed(n, 0);
    int worst = 0;
    for (int i = 0; i < n; ++i) {
      placed[perm[i]] = 1;
      int bd = 0;
      for (int u = 0; u < n; ++u) {
        if (!placed[u]) continue;
        for (int w : g.neighbors(u))
          if (!placed[w]) {
            ++bd;
            break;
          }
      }
      worst = std::max(worst, bd);
    }
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

/// All labeled connected graphs on n vertices (n small), via callback.
inline void enumerate_connected_graphs(int n, const std::function<void(const Graph&)>& emit) {
  std::vector<std::pair<int, int>> all;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) all.emplace_back(u, v);
  const std::uint64_t lim = 1ull << all.size();
  for (std::uint64_t s = 0; s < lim; ++s) {
    std::vector<std::pair<int, int>> edges;
    for (std::size_t i = 0; i < all.size(); ++i)
      if (s >> i & 1) edges.push_back(all[i]);
    auto g = Graph::from_edge_list(n, edges);
    if (g.is_connected()) emit(g);
  }
}

/// Exhaustive minor enumerator: assigns every host vertex to a pattern
/// vertex or none and checks the model axioms (small hosts only).
inline bool minor_exists_exhaustive(const Graph& g, const Graph& pattern) {
  const int n = g.vertex_count();
  const int np = pattern.vertex_count();
  std::vector<int> assign(n, -1);
  std::function<bool(int)> rec = [&](int v) -> bool {
    if (v == n) {
      MinorModel m;
      m.branch_sets.assign(np, {});
      for (int u = 0; u < n; ++u)
        if (assign[u] != -1) m.branch_sets[assign[u]].push_back(u);
      return static_cast<bool>(verify_minor_model(g, pattern, m));
    }
    for (int cls = -1; cls < np; ++cls) {
      assign[v] = cls;
      if (rec(v + 1)) return true;
    }
    assign[v] = -1;
    return false;
  };
  return rec(0);
}

}  // namespace cwl::oracle
