#include "cwl/corpus.hpp"

#include <array>
#include <random>

namespace cwl {

Graph make_path(int n) {
  if (n < 1) throw GraphError("path: need n >= 1");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph::from_edge_list(n, edges);
}

Graph make_cycle(int n) {
  if (n < 3) throw GraphError("cycle: need n >= 3");
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(n - 1, 0);
  return Graph::from_edge_list(n, edges);
}

Graph make_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) throw GraphError("grid: need positive dimensions");
  std::vector<std::pair<int, int>> edges;
  auto id = [cols](int r, int c) { return r * cols + c; };
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph::from_edge_list(rows * cols, edges);
}

Graph make_subdivided_star(int arms, int sub) {
  if (arms < 1 || sub < 0) throw GraphError("subdivided_star: bad parameters");
  const int arm_len = sub + 1;  // edges per arm
  std::vector<std::pair<int, int>> edges;
  int next = 1;
  for (int a = 0; a < arms; ++a) {
    int prev = 0;
    for (int i = 0; i < arm_len; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
  }
  return Graph::from_edge_list(next, edges);
}

Graph make_subdivided_tree(int ell, int sub) {
  if (ell < 0 || sub < 0) throw GraphError("subdivided_tree: bad parameters");
  auto pt = build_pattern_tree(ell);
  int next = pt.vertex_count();
  std::vector<std::pair<int, int>> edges;
  for (auto [u, v] : pt.tree.edges()) {
    // Orient from the parent side for a deterministic numbering.
    int from = pt.parent[v] == u ? u : v;
    int to = from == u ? v : u;
    int prev = from;
    for (int i = 0; i < sub; ++i) {
      edges.emplace_back(prev, next);
      prev = next++;
    }
    edges.emplace_back(prev, to);
  }
  return Graph::from_edge_list(next, edges);
}

Graph make_tripod_junction(int spoke, int arm) {
  if (spoke < 1 || arm < 1) throw GraphError("tripod_junction: bad parameters");
  std::vector<std::pair<int, int>> edges;
  int next = 0;
  std::array<int, 3> hubs{};
  for (int i = 0; i < 3; ++i) {
    hubs[i] = next++;
    for (int a = 0; a < 3; ++a) {
      int prev = hubs[i];
      for (int s = 0; s < arm; ++s) {
        int v = next++;
        edges.emplace_back(prev, v);
        prev = v;
      }
    }
  }
  // Spokes from each hub stop one vertex short of the junction.
  std::array<int, 3> spoke_ends{};
  for (int i = 0; i < 3; ++i) {
    int prev = hubs[i];
    for (int s = 0; s + 1 < spoke; ++s) {
      int v = next++;
      edges.emplace_back(prev, v);
      prev = v;
    }
    spoke_ends[i] = prev;
  }
  int junction = next++;
  for (int i = 0; i < 3; ++i) edges.emplace_back(spoke_ends[i], junction);
  return Graph::from_edge_list(next, edges);
}

Graph make_random_tree(int n, std::uint64_t seed) {
  if (n < 1) throw GraphError("random_tree: need n >= 1");
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i) {
    int p = static_cast<int>(rng() % static_cast<std::uint64_t>(i));
    edges.emplace_back(p, i);
  }
  return Graph::from_edge_list(n, edges);
}

Graph make_random_connected(int n, int extra_edges, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i < n; ++i)
    edges.emplace_back(static_cast<int>(rng() % static_cast<std::uint64_t>(i)), i);
  int attempts = 0;
  int added = 0;
  while (added < extra_edges && attempts < 50 * (extra_edges + 1)) {
    ++attempts;
    int u = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    int v = static_cast<int>(rng() % static_cast<std::uint64_t>(n));
    if (u == v) continue;
    edges.emplace_back(u, v);
    ++added;
  }
  return Graph::from_edge_list(n, edges);
}

}  // namespace cwl
