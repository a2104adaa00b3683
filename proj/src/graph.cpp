#include "cwl/graph.hpp"

#include <algorithm>
#include <deque>

namespace cwl {

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 0) throw GraphError("vertex count must be nonnegative");
  Graph g;
  g.n_ = n;
  g.adj_.assign(n, {});
  std::vector<std::pair<int, int>> es;
  es.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    if (u == v) throw GraphError("loop at vertex " + std::to_string(u));
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw GraphError("edge endpoint out of range: (" + std::to_string(u) + "," +
                       std::to_string(v) + ")");
    if (u > v) std::swap(u, v);
    es.emplace_back(u, v);
  }
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  g.edges_ = std::move(es);
  for (auto [u, v] : g.edges_) {
    g.adj_[u].push_back(v);
    g.adj_[v].push_back(u);
  }
  for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
  return g;
}

bool Graph::has_edge(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  const auto& nb = adj_[u];
  return std::binary_search(nb.begin(), nb.end(), v);
}

int Graph::edge_index(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges_.begin(), edges_.end(), std::make_pair(u, v));
  if (it == edges_.end() || *it != std::make_pair(u, v))
    throw GraphError("no such edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  return static_cast<int>(it - edges_.begin());
}

std::vector<int> Graph::multi_source_distances(const VertexSet& sources, int max_depth) const {
  std::vector<int> dist(n_, kInfDist);
  std::deque<int> queue;
  for (int s : sources) {
    check_vertex(s);
    if (dist[s] != 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (max_depth >= 0 && dist[u] >= max_depth) continue;
    for (int w : adj_[u]) {
      if (dist[w] == kInfDist) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

int Graph::distance(int u, int v) const {
  check_vertex(u);
  check_vertex(v);
  if (u == v) return 0;
  auto dist = multi_source_distances({u});
  return dist[v];
}

int Graph::set_distance(const VertexSet& xs, const VertexSet& ys) const {
  if (xs.empty() || ys.empty()) throw GraphError("set_distance requires nonempty sets");
  if (sets_intersect(xs, ys)) return 0;
  auto dist = multi_source_distances(xs);
  int best = kInfDist;
  for (int y : ys) best = std::min(best, dist[y]);
  return best;
}

VertexSet Graph::ball(const VertexSet& xs, int r) const {
  if (xs.empty()) throw GraphError("ball requires a nonempty set");
  auto dist = multi_source_distances(xs, r);
  VertexSet out;
  for (int v = 0; v < n_; ++v)
    if (dist[v] <= r) out.push_back(v);
  return out;
}

VertexSet Graph::boundary(const VertexSet& xs) const {
  auto mask = make_mask(n_, xs);
  VertexSet out;
  for (int v : xs) {
    for (int w : adj_[v]) {
      if (!mask[w]) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

bool Graph::touches(const VertexSet& xs, const VertexSet& ys) const {
  if (sets_intersect(xs, ys)) return true;
  auto mask = make_mask(n_, ys);
  for (int v : xs)
    for (int w : adj_[v])
      if (mask[w]) return true;
  return false;
}

bool Graph::is_connected_induced(const VertexSet& xs) const {
  if (xs.empty()) return false;
  auto mask = make_mask(n_, xs);
  std::deque<int> queue{xs.front()};
  std::vector<char> seen(n_, 0);
  seen[xs.front()] = 1;
  int reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : adj_[u]) {
      if (mask[w] && !seen[w]) {
        seen[w] = 1;
        ++reached;
        queue.push_back(w);
      }
    }
  }
  return reached == static_cast<int>(xs.size());
}

bool Graph::is_connected() const {
  if (n_ <= 1) return true;
  auto dist = multi_source_distances({0});
  for (int v = 0; v < n_; ++v)
    if (dist[v] == kInfDist) return false;
  return true;
}

std::vector<VertexSet> Graph::components() const {
  std::vector<VertexSet> out;
  std::vector<char> seen(n_, 0);
  for (int s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    VertexSet comp;
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (int w : adj_[u]) {
        if (!seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

VertexSet make_vertex_set(std::vector<int> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool set_contains(const VertexSet& xs, int v) {
  return std::binary_search(xs.begin(), xs.end(), v);
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool sets_intersect(const VertexSet& a, const VertexSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib)
      ++ia;
    else if (*ib < *ia)
      ++ib;
    else
      return true;
  }
  return false;
}

bool is_subset(const VertexSet& a, const VertexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<char> make_mask(int n, const VertexSet& xs) {
  std::vector<char> mask(n, 0);
  for (int v : xs) mask[v] = 1;
  return mask;
}

}  // namespace cwl
