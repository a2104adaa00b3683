#include "cwl/tiebreak.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

namespace cwl {

TieBreaker TieBreaker::lex(const Graph& g) {
  TieBreaker tb;
  tb.kind_ = Kind::Lex;
  tb.ranks_.resize(g.edge_count());
  std::iota(tb.ranks_.begin(), tb.ranks_.end(), 0);
  return tb;
}

TieBreaker TieBreaker::seeded(const Graph& g, std::uint64_t seed) {
  TieBreaker tb;
  tb.kind_ = Kind::Seeded;
  tb.seed_ = seed;
  tb.ranks_.resize(g.edge_count());
  std::iota(tb.ranks_.begin(), tb.ranks_.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(tb.ranks_.begin(), tb.ranks_.end(), rng);
  return tb;
}

bool LambdaPath::valid_in(const Graph& g) const {
  if (verts.empty()) return false;
  auto sorted = verts;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    if (!g.has_edge(verts[i], verts[i + 1])) return false;
  return true;
}

std::vector<int> LambdaPath::sorted_ranks(const Graph& g, const TieBreaker& tb) const {
  std::vector<int> rs;
  rs.reserve(verts.size());
  for (std::size_t i = 0; i + 1 < verts.size(); ++i)
    rs.push_back(tb.rank_of(g, verts[i], verts[i + 1]));
  std::sort(rs.begin(), rs.end());
  return rs;
}

bool LambdaPath::same_path_as(const LambdaPath& other) const {
  if (verts == other.verts) return true;
  auto rev = other.verts;
  std::reverse(rev.begin(), rev.end());
  return verts == rev;
}

int lambda_compare(const Graph& g, const TieBreaker& tb, const LambdaPath& p,
                   const LambdaPath& q) {
  if (p.length() != q.length()) return p.length() < q.length() ? -1 : 1;
  auto rp = p.sorted_ranks(g, tb);
  auto rq = q.sorted_ranks(g, tb);
  // Equal-length paths: the first differing position of the ascending rank
  // lists identifies the lowest-ranked edge of the symmetric difference.
  for (std::size_t i = 0; i < rp.size(); ++i) {
    if (rp[i] != rq[i]) return rp[i] < rq[i] ? -1 : 1;
  }
  throw std::invalid_argument("lambda_compare: paths share their edge set");
}

LambdaPath LambdaField::path_from(int v) const {
  LambdaPath p;
  int cur = v;
  p.verts.push_back(cur);
  while (parent[cur] != -1) {
    cur = parent[cur];
    p.verts.push_back(cur);
  }
  return p;
}

std::vector<int> LambdaField::ranks_from(int v) const {
  std::vector<int> rs;
  int cur = v;
  while (parent[cur] != -1) {
    rs.push_back(parent_rank[cur]);
    cur = parent[cur];
  }
  std::sort(rs.begin(), rs.end());
  return rs;
}

namespace {

// Compares the candidate extensions (u1 + edge r1) vs (u2 + edge r2), both
// reaching the same vertex with equal length, where u1 and u2 carry their
// finalized best paths in the field. Ascending sorted rank lists compare
// lexicographically; the smaller list is the Lambda-less path.
int compare_extension(const LambdaField& f, int u1, int r1, int u2, int r2) {
  std::vector<int> a = f.ranks_from(u1);
  std::vector<int> b = f.ranks_from(u2);
  a.push_back(r1);
  b.push_back(r2);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a == b) throw std::logic_error("distinct candidate paths share an edge set");
  return a < b ? -1 : 1;
}

}  // namespace

LambdaField lambda_field(const Graph& g, const TieBreaker& tb,
                         const std::vector<VertexSet>& sources) {
  const int n = g.vertex_count();
  LambdaField f;
  f.owner.assign(n, -1);
  f.dist.assign(n, kInfDist);
  f.parent.assign(n, -1);
  f.parent_rank.assign(n, -1);

  std::deque<int> queue;
  for (std::size_t i = 0; i < sources.size(); ++i) {
    for (int v : sources[i]) {
      g.check_vertex(v);
      if (f.dist[v] == 0) throw GraphError("lambda_field: source sets overlap");
      f.dist[v] = 0;
      f.owner[v] = static_cast<int>(i);
      queue.push_back(v);
    }
  }

  // Layered BFS; vertices within a layer may settle in any order because
  // candidates only reference the previous (finalized) layer.
  std::vector<int> layer_of(n, -1);
  std::vector<std::vector<int>> layers;
  {
    auto dist = g.multi_source_distances([&] {
      VertexSet all;
      for (const auto& s : sources) all.insert(all.end(), s.begin(), s.end());
      return make_vertex_set(std::move(all));
    }());
    int maxd = 0;
    for (int v = 0; v < n; ++v)
      if (dist[v] != kInfDist) maxd = std::max(maxd, dist[v]);
    layers.assign(maxd + 1, {});
    for (int v = 0; v < n; ++v) {
      if (dist[v] != kInfDist) {
        f.dist[v] = dist[v];
        layers[dist[v]].push_back(v);
      }
    }
  }

  for (std::size_t d = 1; d < layers.size(); ++d) {
    for (int v : layers[d]) {
      int best_u = -1, best_r = -1;
      for (int u : g.neighbors(v)) {
        if (f.dist[u] != static_cast<int>(d) - 1) continue;
        int r = tb.rank_of(g, u, v);
        if (best_u == -1 || compare_extension(f, u, r, best_u, best_r) < 0) {
          best_u = u;
          best_r = r;
        }
      }
      f.parent[v] = best_u;
      f.parent_rank[v] = best_r;
      f.owner[v] = f.owner[best_u];
    }
  }
  return f;
}

LambdaPath lambda_geodesic(const Graph& g, const TieBreaker& tb, int v, const VertexSet& xs) {
  if (xs.empty()) throw GraphError("lambda_geodesic: empty target set");
  g.check_vertex(v);
  auto f = lambda_field(g, tb, {xs});
  if (f.dist[v] == kInfDist) throw GraphError("lambda_geodesic: target set unreachable");
  return f.path_from(v);
}

LambdaPath lambda_geodesic_between(const Graph& g, const TieBreaker& tb, const VertexSet& a,
                                   const VertexSet& b) {
  if (a.empty() || b.empty()) throw GraphError("lambda_geodesic_between: empty set");
  if (sets_intersect(a, b)) throw GraphError("lambda_geodesic_between: sets intersect");
  auto f = lambda_field(g, tb, {b});
  int best = -1;
  for (int v : a) {
    if (f.dist[v] == kInfDist) continue;
    if (best == -1 || f.dist[v] < f.dist[best]) {
      best = v;
    } else if (f.dist[v] == f.dist[best]) {
      auto rv = f.ranks_from(v);
      auto rb = f.ranks_from(best);
      if (rv < rb) best = v;
    }
  }
  if (best == -1) throw GraphError("lambda_geodesic_between: sets disconnected");
  return f.path_from(best);
}

VoronoiResult voronoi_partition(const Graph& g, const TieBreaker& tb,
                                const std::vector<VertexSet>& buildings) {
  if (buildings.empty()) throw GraphError("voronoi_partition: no buildings");
  for (std::size_t i = 0; i < buildings.size(); ++i) {
    if (!g.is_connected_induced(buildings[i]))
      throw GraphError("voronoi_partition: building " + std::to_string(i) +
                       " is empty or disconnected");
    for (std::size_t j = i + 1; j < buildings.size(); ++j)
      if (sets_intersect(buildings[i], buildings[j]))
        throw GraphError("voronoi_partition: buildings overlap");
  }

  VoronoiResult vr;
  vr.field = lambda_field(g, tb, buildings);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (vr.field.owner[v] == -1)
      throw GraphError("voronoi_partition: component without a building");

  vr.cells.assign(buildings.size(), {});
  for (int v = 0; v < g.vertex_count(); ++v) vr.cells[vr.field.owner[v]].push_back(v);

  // Definitional checks: in-cell parent chains and cell connectivity.
  for (int v = 0; v < g.vertex_count(); ++v) {
    int p = vr.field.parent[v];
    if (p != -1 && vr.field.owner[p] != vr.field.owner[v])
      throw std::logic_error("voronoi_partition: geodesic leaves its cell");
  }
  for (std::size_t i = 0; i < buildings.size(); ++i) {
    if (!is_subset(buildings[i], vr.cells[i]))
      throw std::logic_error("voronoi_partition: building escapes its cell");
    if (!g.is_connected_induced(vr.cells[i]))
      throw std::logic_error("voronoi_partition: disconnected cell");
  }
  return vr;
}

bool adjoins(const VoronoiResult& vr, const Graph& g, int i, int j) {
  if (i == j) throw GraphError("adjoins: identical buildings");
  return g.touches(vr.cells[i], vr.cells[j]);
}

}  // namespace cwl
