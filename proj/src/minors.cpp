#include "cwl/minors.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace cwl {

std::vector<int> PatternTree::subtree(int v) const {
  std::vector<int> out;
  std::deque<int> queue{v};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    out.push_back(u);
    for (int w : children[u]) queue.push_back(w);
  }
  std::sort(out.begin(), out.end());
  return out;
}

PatternTree build_pattern_tree(int ell) {
  if (ell < 0) throw GraphError("build_pattern_tree: negative depth");
  PatternTree pt;
  pt.ell = ell;
  const int n = ell == 0 ? 1 : 3 * (1 << ell) - 2;
  pt.parent.assign(n, -1);
  pt.depth.assign(n, 0);
  pt.children.assign(n, {});
  pt.branch.assign(n, -1);

  std::vector<std::pair<int, int>> edges;
  int next = 1;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (pt.depth[v] == ell) continue;
    int fanout = v == 0 ? 3 : 2;
    for (int i = 0; i < fanout; ++i) {
      int w = next++;
      pt.parent[w] = v;
      pt.depth[w] = pt.depth[v] + 1;
      pt.branch[w] = v == 0 ? i : pt.branch[v];
      pt.children[v].push_back(w);
      edges.emplace_back(v, w);
      queue.push_back(w);
    }
  }
  if (next != n) throw std::logic_error("build_pattern_tree: vertex count mismatch");
  pt.tree = Graph::from_edge_list(n, edges);
  return pt;
}

bool is_pattern_tree_shape(const Graph& tree, int ell) {
  auto pt = build_pattern_tree(ell);
  if (tree.vertex_count() != pt.tree.vertex_count()) return false;
  return tree.edges() == pt.tree.edges();
}

namespace {

// Distances from a part truncated at `radius`; values beyond map to kInfDist.
std::vector<int> part_distances(const Graph& g, const VertexSet& part, long long radius) {
  int cap = static_cast<int>(std::min<long long>(radius, g.vertex_count()));
  return g.multi_source_distances(part, cap);
}

int dist_to_set(const std::vector<int>& dist, const VertexSet& xs) {
  int best = kInfDist;
  for (int v : xs) best = std::min(best, dist[v]);
  return best;
}

ModelCheck check_parts_basic(const Graph& g, const std::vector<const VertexSet*>& parts,
                             const std::vector<std::string>& names) {
  std::vector<int> owner(g.vertex_count(), -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i]->empty()) return {false, "empty part " + names[i]};
    if (!g.is_connected_induced(*parts[i])) return {false, "disconnected part " + names[i]};
    for (int v : *parts[i]) {
      if (owner[v] != -1)
        return {false, "parts " + names[owner[v]] + " and " + names[i] + " overlap"};
      owner[v] = static_cast<int>(i);
    }
  }
  return {};
}

}  // namespace

ModelCheck verify_minor_model(const Graph& g, const Graph& pattern, const MinorModel& m) {
  if (static_cast<int>(m.branch_sets.size()) != pattern.vertex_count())
    return {false, "branch set count mismatch"};
  std::vector<const VertexSet*> parts;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m.branch_sets.size(); ++i) {
    parts.push_back(&m.branch_sets[i]);
    names.push_back("v" + std::to_string(i));
  }
  auto basic = check_parts_basic(g, parts, names);
  if (!basic) return basic;
  for (auto [u, v] : pattern.edges()) {
    if (!g.touches(m.branch_sets[u], m.branch_sets[v]))
      return {false, "no edge between branch sets of pattern edge (" + std::to_string(u) +
                         "," + std::to_string(v) + ")"};
  }
  return {};
}

VertexSet FatModel::all_vertices() const {
  VertexSet out;
  for (const auto& p : vertex_parts) out.insert(out.end(), p.begin(), p.end());
  for (const auto& p : edge_parts) out.insert(out.end(), p.begin(), p.end());
  return make_vertex_set(std::move(out));
}

ModelCheck verify_fat_minor(const Graph& g, const Graph& pattern, const FatModel& m) {
  const int nv = pattern.vertex_count();
  const int ne = pattern.edge_count();
  if (static_cast<int>(m.vertex_parts.size()) != nv) return {false, "vertex part count mismatch"};
  if (static_cast<int>(m.edge_parts.size()) != ne) return {false, "edge part count mismatch"};
  if (m.c < 0) return {false, "negative c"};

  std::vector<const VertexSet*> parts;
  std::vector<std::string> names;
  for (int i = 0; i < nv; ++i) {
    parts.push_back(&m.vertex_parts[i]);
    names.push_back("v" + std::to_string(i));
  }
  for (int e = 0; e < ne; ++e) {
    parts.push_back(&m.edge_parts[e]);
    auto [u, v] = pattern.edges()[e];
    names.push_back("e" + std::to_string(u) + "-" + std::to_string(v));
  }
  auto basic = check_parts_basic(g, parts, names);
  if (!basic) return basic;

  for (int e = 0; e < ne; ++e) {
    auto [u, v] = pattern.edges()[e];
    if (!g.touches(m.edge_parts[e], m.vertex_parts[u]) ||
        !g.touches(m.edge_parts[e], m.vertex_parts[v]))
      return {false, "edge part " + names[nv + e] + " not joined to both endpoints"};
  }

  // Incidence exemption: part index nv+e is exempt with its two endpoints.
  auto exempt = [&](int i, int j) {
    if (i > j) std::swap(i, j);
    if (i >= nv || j < nv) return false;
    auto [u, v] = pattern.edges()[j - nv];
    return i == u || i == v;
  };
  for (std::size_t i = 0; i < parts.size(); ++i) {
    auto dist = part_distances(g, *parts[i], m.c);
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      if (exempt(static_cast<int>(i), static_cast<int>(j))) continue;
      if (dist_to_set(dist, *parts[j]) <= m.c)
        return {false, "parts " + names[i] + " and " + names[j] + " within distance " +
                           std::to_string(m.c)};
    }
  }
  return {};
}

VertexSet branch_plus(const PatternTree& pt, const FatModel& m, int i) {
  VertexSet out;
  int root_child = pt.children[0][i];
  for (int v : pt.subtree(root_child)) {
    const auto& part = m.vertex_parts[v];
    out.insert(out.end(), part.begin(), part.end());
    const auto& epart = m.edge_parts[pt.tree.edge_index(pt.parent[v], v)];
    out.insert(out.end(), epart.begin(), epart.end());
  }
  return make_vertex_set(std::move(out));
}

ModelCheck verify_superfat(const Graph& g, const PatternTree& pt, const FatModel& m) {
  auto fat = verify_fat_minor(g, pt.tree, m);
  if (!fat) return fat;
  if (pt.ell == 0) return {};
  VertexSet branches[3];
  for (int i = 0; i < 3; ++i) branches[i] = branch_plus(pt, m, i);
  for (int i = 0; i < 3; ++i) {
    auto dist = part_distances(g, branches[i], 3 * m.c);
    for (int j = i + 1; j < 3; ++j) {
      if (dist_to_set(dist, branches[j]) <= 3 * m.c)
        return {false, "root branches " + std::to_string(i) + " and " + std::to_string(j) +
                           " within distance " + std::to_string(3 * m.c)};
    }
  }
  return {};
}

namespace {

struct MinorSearcher {
  const Graph& g;
  const Graph& pattern;
  long long budget;
  long long expansions = 0;
  bool exhausted = false;

  std::vector<int> order;       // pattern vertices, BFS from 0
  std::vector<int> order_par;   // index into `order` of the parent, -1 for root
  std::vector<int> anchor;      // pattern vertex -> G vertex
  std::vector<int> assign;      // G vertex -> pattern vertex owning it, -1 free
  std::vector<std::vector<int>> extras;  // absorbed path interiors per pattern vertex
  std::optional<MinorModel> found;

  MinorSearcher(const Graph& g_, const Graph& pattern_, long long budget_)
      : g(g_), pattern(pattern_), budget(budget_) {
    const int np = pattern.vertex_count();
    std::vector<char> seen(np, 0);
    std::deque<int> queue{0};
    seen[0] = 1;
    std::vector<int> parent(np, -1);
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      order.push_back(v);
      for (int w : pattern.neighbors(v))
        if (!seen[w]) {
          seen[w] = 1;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    order_par.assign(np, -1);
    std::vector<int> pos(np);
    for (int i = 0; i < np; ++i) pos[order[i]] = i;
    for (int i = 1; i < np; ++i) order_par[i] = pos[parent[order[i]]];
    anchor.assign(np, -1);
    assign.assign(g.vertex_count(), -1);
    extras.assign(np, {});
  }

  bool tick() {
    if (++expansions > budget) {
      exhausted = true;
      return false;
    }
    return true;
  }

  void record() {
    MinorModel m;
    m.branch_sets.resize(pattern.vertex_count());
    for (int v = 0; v < pattern.vertex_count(); ++v) {
      auto bs = extras[v];
      bs.push_back(anchor[v]);
      m.branch_sets[v] = make_vertex_set(std::move(bs));
    }
    found = m;
  }

  bool place(std::size_t k) {
    if (found || exhausted) return found.has_value();
    if (k == order.size()) {
      record();
      return true;
    }
    int pv = order[k];
    int from = anchor[order[order_par[k]]];
    return grow_path(k, pv, from);
  }

  // Extends a path of fresh vertices from `x`; each fresh vertex either
  // becomes the child's anchor or a path interior absorbed by the child.
  bool grow_path(std::size_t k, int pv, int x) {
    if (!tick()) return false;
    for (int y : g.neighbors(x)) {
      if (assign[y] != -1) continue;
      assign[y] = pv;
      anchor[pv] = y;
      if (place(k + 1)) return true;
      anchor[pv] = -1;
      extras[pv].push_back(y);
      if (grow_path(k, pv, y)) return true;
      extras[pv].pop_back();
      assign[y] = -1;
      if (exhausted) return false;
    }
    return false;
  }

  MinorSearchResult run() {
    const int np = pattern.vertex_count();
    for (int s = 0; s < g.vertex_count() && !found && !exhausted; ++s) {
      if (!tick()) break;
      int root = order[0];
      assign[s] = root;
      anchor[root] = s;
      if (np == 1) {
        record();
      } else {
        place(1);
      }
      if (!found) {
        assign[s] = -1;
        anchor[root] = -1;
      }
    }
    MinorSearchResult res;
    res.expansions = expansions;
    if (found) {
      res.status = SearchStatus::Found;
      res.model = found;
    } else {
      res.status = exhausted ? SearchStatus::Unknown : SearchStatus::Absent;
    }
    return res;
  }
};

}  // namespace

MinorSearchResult find_minor_model(const Graph& g, const Graph& pattern, long long budget) {
  const int np = pattern.vertex_count();
  if (np > 10) throw GraphError("find_minor_model: pattern too large");
  if (np == 0) throw GraphError("find_minor_model: empty pattern");
  if (pattern.edge_count() != np - 1 || !pattern.is_connected())
    throw GraphError("find_minor_model: pattern must be a tree");
  for (int v = 0; v < np; ++v)
    if (static_cast<int>(pattern.neighbors(v).size()) > 3)
      throw GraphError("find_minor_model: pattern degree above three unsupported");

  if (pattern.vertex_count() > g.vertex_count()) {
    MinorSearchResult res;
    res.status = SearchStatus::Absent;
    return res;
  }

  MinorSearcher searcher(g, pattern, budget);
  auto res = searcher.run();
  if (res.status == SearchStatus::Found) {
    auto chk = verify_minor_model(g, pattern, *res.model);
    if (!chk) throw std::logic_error("find_minor_model produced invalid model: " + chk.violation);
  }
  return res;
}

VertexSet trim_for_claw(const Graph& g, const VertexSet& seed,
                        const std::vector<VertexSet>& model_unions, long long c,
                        int anchor) {
  std::vector<std::vector<int>> dists;
  dists.reserve(model_unions.size());
  for (const auto& mu : model_unions) dists.push_back(part_distances(g, mu, c + 1));

  VertexSet allowed;
  for (int v : seed) {
    bool ok = true;
    for (const auto& d : dists)
      if (d[v] <= c) ok = false;
    if (ok) allowed.push_back(v);
  }
  if (allowed.empty()) throw GraphError("trim_for_claw: nothing remains after peeling");

  // Components of G[allowed], by minimum vertex.
  auto mask = make_mask(g.vertex_count(), allowed);
  std::vector<char> seen(g.vertex_count(), 0);
  std::vector<VertexSet> comps;
  for (int s : allowed) {
    if (seen[s]) continue;
    VertexSet comp;
    std::deque<int> queue{s};
    seen[s] = 1;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      for (int w : g.neighbors(u))
        if (mask[w] && !seen[w]) {
          seen[w] = 1;
          queue.push_back(w);
        }
    }
    comps.push_back(make_vertex_set(std::move(comp)));
  }

  for (const auto& comp : comps) {
    if (anchor != -1 && !set_contains(comp, anchor)) continue;
    bool all_exact = true;
    for (const auto& d : dists) {
      int best = kInfDist;
      for (int v : comp) best = std::min(best, d[v]);
      if (best != c + 1) all_exact = false;
    }
    if (all_exact) return comp;
    if (anchor != -1) break;
  }
  throw GraphError("trim_for_claw: no component at exact distance c+1 from every model");
}

std::array<LambdaPath, 3> make_claw_legs(const Graph& g, const TieBreaker& tb,
                                         const VertexSet& w,
                                         const std::array<FatModel, 3>& models) {
  std::array<LambdaPath, 3> legs;
  for (int h = 0; h < 3; ++h)
    legs[h] = lambda_geodesic_between(g, tb, w, models[h].all_vertices());
  return legs;
}

namespace {

void map_subtrees(const PatternTree& ptn, int nv, const PatternTree& pto, int ov,
                  const std::vector<int>& keep_children_of_old_root,
                  std::vector<int>& new_to_old) {
  new_to_old[nv] = ov;
  const auto& nc = ptn.children[nv];
  std::vector<int> oc = ov == 0 ? keep_children_of_old_root : pto.children[ov];
  if (nc.size() != oc.size())
    throw std::logic_error("claw_combine: subtree shape mismatch during relabeling");
  for (std::size_t i = 0; i < nc.size(); ++i)
    map_subtrees(ptn, nc[i], pto, oc[i], keep_children_of_old_root, new_to_old);
}

}  // namespace

FatModel claw_combine(const Graph& g, int t, const std::array<FatModel, 3>& models,
                      const VertexSet& w, const std::array<LambdaPath, 3>& legs, long long c) {
  if (c < 2) throw GraphError("claw_combine: requires c >= 2");
  PatternTree pto = build_pattern_tree(t);

  std::array<VertexSet, 3> unions;
  for (int h = 0; h < 3; ++h) {
    if (models[h].c < c)
      throw GraphError("claw_combine: model " + std::to_string(h) + " is not c-superfat at c");
    auto chk = verify_superfat(g, pto, models[h]);
    if (!chk)
      throw GraphError("claw_combine: input model " + std::to_string(h) +
                       " invalid: " + chk.violation);
    unions[h] = models[h].all_vertices();
  }
  for (int i = 0; i < 3; ++i) {
    auto dist = part_distances(g, unions[i], 5 * c + 2);
    for (int j = i + 1; j < 3; ++j)
      if (dist_to_set(dist, unions[j]) <= 5 * c + 2)
        throw GraphError("claw_combine: models " + std::to_string(i) + "," + std::to_string(j) +
                         " within distance 5c+2");
  }
  if (!g.is_connected_induced(w)) throw GraphError("claw_combine: W empty or disconnected");
  for (int h = 0; h < 3; ++h) {
    auto dist = part_distances(g, w, c + 2);
    if (dist_to_set(dist, unions[h]) != c + 1)
      throw GraphError("claw_combine: dist(W, model " + std::to_string(h) +
                       ") differs from c+1");
  }

  std::array<int, 3> drop{-1, -1, -1};
  for (int h = 0; h < 3; ++h) {
    const auto& leg = legs[h];
    if (!leg.valid_in(g) || leg.length() != c + 1)
      throw GraphError("claw_combine: leg " + std::to_string(h) + " is not a length-(c+1) path");
    if (!set_contains(w, leg.verts.front()) || !set_contains(unions[h], leg.verts.back()))
      throw GraphError("claw_combine: leg " + std::to_string(h) + " endpoints misplaced");
    for (std::size_t i = 1; i + 1 < leg.verts.size(); ++i)
      if (set_contains(w, leg.verts[i]) || set_contains(unions[h], leg.verts[i]))
        throw GraphError("claw_combine: leg " + std::to_string(h) + " re-enters W or the model");

    if (t >= 1) {
      VertexSet leg_set = make_vertex_set(leg.verts);
      auto leg_dist = part_distances(g, leg_set, c);
      std::vector<int> close;
      for (int i = 0; i < 3; ++i)
        if (dist_to_set(leg_dist, branch_plus(pto, models[h], i)) <= c) close.push_back(i);
      if (close.size() > 1)
        throw GraphError("claw_combine: leg " + std::to_string(h) +
                         " approaches two root branches");
      drop[h] = close.empty() ? 2 : close.front();
    }
  }

  PatternTree ptn = build_pattern_tree(t + 1);
  FatModel out;
  out.c = c;
  out.vertex_parts.assign(ptn.vertex_count(), {});
  out.edge_parts.assign(ptn.vertex_count() - 1, {});
  out.vertex_parts[0] = w;

  for (int h = 0; h < 3; ++h) {
    int s_h = ptn.children[0][h];
    std::vector<int> keep;
    if (t >= 1)
      for (int i = 0; i < 3; ++i)
        if (i != drop[h]) keep.push_back(pto.children[0][i]);

    std::vector<int> new_to_old(ptn.vertex_count(), -1);
    map_subtrees(ptn, s_h, pto, 0, keep, new_to_old);

    for (int nv : ptn.subtree(s_h)) {
      int ov = new_to_old[nv];
      out.vertex_parts[nv] = models[h].vertex_parts[ov];
      if (nv != s_h) {
        int ne = ptn.tree.edge_index(ptn.parent[nv], nv);
        int oe = pto.tree.edge_index(new_to_old[ptn.parent[nv]], ov);
        out.edge_parts[ne] = models[h].edge_parts[oe];
      }
    }

    // Root edge part e_h': the leg interior when the leg lands in the old
    // root part, otherwise the leg (minus its W end) merged with the dropped
    // branch it lands in.
    const auto& leg = legs[h];
    int y = leg.verts.back();
    int ne_root = ptn.tree.edge_index(0, s_h);
    if (set_contains(models[h].vertex_parts[0], y)) {
      VertexSet interior(leg.verts.begin() + 1, leg.verts.end() - 1);
      out.edge_parts[ne_root] = make_vertex_set(std::move(interior));
    } else {
      if (t == 0)
        throw std::logic_error("claw_combine: leg misses the single part of an H_0 model");
      VertexSet dropped = branch_plus(pto, models[h], drop[h]);
      if (!set_contains(dropped, y))
        throw std::logic_error("claw_combine: leg lands in a kept branch after relabeling");
      VertexSet tail(leg.verts.begin() + 1, leg.verts.end());
      out.edge_parts[ne_root] = set_union(make_vertex_set(std::move(tail)), dropped);
    }
  }

  auto chk = verify_superfat(g, ptn, out);
  if (!chk) throw std::logic_error("claw_combine output failed verification: " + chk.violation);

  // Containment in W u models u legs, per the combination statement.
  VertexSet hull = w;
  for (int h = 0; h < 3; ++h) {
    hull = set_union(hull, unions[h]);
    hull = set_union(hull, make_vertex_set(legs[h].verts));
  }
  if (!is_subset(out.all_vertices(), hull))
    throw std::logic_error("claw_combine output escapes W u models u legs");
  return out;
}

ModelCheck verify_quasi_isometry(const Graph& g, const Graph& h, const QuasiIsometryMap& q) {
  if (static_cast<int>(q.phi.size()) != g.vertex_count())
    return {false, "map not total on V(G)"};
  for (int v : q.phi)
    if (v < 0 || v >= h.vertex_count()) return {false, "map value out of range"};
  if (q.L < 0 || q.C < 0) return {false, "negative parameters"};

  for (int u = 0; u < g.vertex_count(); ++u) {
    auto dg = g.multi_source_distances({u});
    auto dh = h.multi_source_distances({q.phi[u]});
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (dg[v] != kInfDist) {
        if (dh[q.phi[v]] == kInfDist ||
            static_cast<long long>(dh[q.phi[v]]) > q.L * dg[v] + q.C)
          return {false, "upper bound violated at (" + std::to_string(u) + "," +
                             std::to_string(v) + ")"};
      }
      if (dh[q.phi[v]] != kInfDist) {
        if (dg[v] == kInfDist || static_cast<long long>(dg[v]) > q.L * dh[q.phi[v]] + q.C)
          return {false, "lower bound violated at (" + std::to_string(u) + "," +
                             std::to_string(v) + ")"};
      }
    }
  }

  VertexSet image = make_vertex_set(q.phi);
  if (image.empty()) return {false, "empty image"};
  auto dist = h.multi_source_distances(image);
  for (int y = 0; y < h.vertex_count(); ++y)
    if (dist[y] == kInfDist || dist[y] > q.C)
      return {false, "image not C-dense at vertex " + std::to_string(y)};
  return {};
}

namespace {

// Shortest path in gp from `a` to `b` of length <= cap whose interior uses
// only vertices claimed by `branch` or unclaimed. Returns the path or empty.
std::vector<int> bounded_path(const Graph& gp, const std::vector<int>& claimed, int branch,
                              int a, int b, long long cap) {
  std::vector<int> dist(gp.vertex_count(), -1), par(gp.vertex_count(), -1);
  std::deque<int> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    if (u == b) break;
    if (dist[u] >= cap) continue;
    for (int w : gp.neighbors(u)) {
      if (dist[w] != -1) continue;
      if (w != b && claimed[w] != -1 && claimed[w] != branch) continue;
      dist[w] = dist[u] + 1;
      par[w] = u;
      queue.push_back(w);
    }
  }
  if (dist[b] == -1 || dist[b] > cap) return {};
  std::vector<int> path;
  for (int v = b; v != -1; v = par[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

std::optional<MinorModel> transfer_construct(const Graph& g, const Graph& gp,
                                             const QuasiIsometryMap& q, const Graph& pattern,
                                             const FatModel& f) {
  const int np = pattern.vertex_count();
  const long long reach = q.L + q.C;
  std::vector<int> claimed(gp.vertex_count(), -1);

  // Edge parts merge into their lower endpoint's branch.
  std::vector<std::vector<int>> assigned_edges(np);
  for (int e = 0; e < pattern.edge_count(); ++e)
    assigned_edges[std::min(pattern.edges()[e].first, pattern.edges()[e].second)].push_back(e);

  auto claim = [&](int branch, int v) {
    if (claimed[v] != -1 && claimed[v] != branch) return false;
    claimed[v] = branch;
    return true;
  };

  for (int v = 0; v < np; ++v) {
    VertexSet source = f.vertex_parts[v];
    for (int e : assigned_edges[v]) source = set_union(source, f.edge_parts[e]);
    for (int x : source)
      if (!claim(v, q.phi[x])) return std::nullopt;
    // Join images of G-adjacent source vertices within radius L+C.
    for (int x : source) {
      for (int y : g.neighbors(x)) {
        if (!set_contains(source, y) || y < x) continue;
        auto path = bounded_path(gp, claimed, v, q.phi[x], q.phi[y], reach);
        if (path.empty()) return std::nullopt;
        for (int z : path)
          if (!claim(v, z)) return std::nullopt;
      }
    }
  }

  // Adjacency per pattern edge via the G-edge from the merged edge part to
  // the higher endpoint's part.
  for (int e = 0; e < pattern.edge_count(); ++e) {
    auto [u, wv] = pattern.edges()[e];
    int lo = std::min(u, wv), hi = std::max(u, wv);
    int ga = -1, gb = -1;
    for (int x : f.edge_parts[e]) {
      for (int y : g.neighbors(x))
        if (set_contains(f.vertex_parts[hi], y)) {
          ga = x;
          gb = y;
          break;
        }
      if (ga != -1) break;
    }
    if (ga == -1) return std::nullopt;
    int pa = q.phi[ga], pb = q.phi[gb];
    if (pa == pb) return std::nullopt;
    auto path = bounded_path(gp, claimed, lo, pa, pb, reach);
    if (path.empty()) return std::nullopt;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
      if (!claim(lo, path[i])) return std::nullopt;
    if (claimed[path.back()] != hi) return std::nullopt;
  }

  MinorModel m;
  m.branch_sets.assign(np, {});
  for (int v = 0; v < gp.vertex_count(); ++v)
    if (claimed[v] != -1) m.branch_sets[claimed[v]].push_back(v);
  return m;
}

}  // namespace

TransferResult transfer_fat_minor(const Graph& g, const Graph& gp, const QuasiIsometryMap& q,
                                  const Graph& pattern, const FatModel& f, long long budget) {
  if (f.c < q.L * (q.L + q.C) + q.C)
    throw GraphError("transfer_fat_minor: c below L(L+C)+C");
  auto fat = verify_fat_minor(g, pattern, f);
  if (!fat) throw GraphError("transfer_fat_minor: fat model invalid: " + fat.violation);
  auto qi = verify_quasi_isometry(g, gp, q);
  if (!qi) throw GraphError("transfer_fat_minor: quasi-isometry invalid: " + qi.violation);

  if (auto m = transfer_construct(g, gp, q, pattern, f)) {
    if (verify_minor_model(gp, pattern, *m)) return {*m, true};
  }

  auto search = find_minor_model(gp, pattern, budget);
  if (search.status == SearchStatus::Found) return {*search.model, false};
  if (search.status == SearchStatus::Unknown)
    throw GraphError("transfer_fat_minor: construction failed and fallback search ran out of budget (incomplete, not absence)");
  throw std::logic_error("transfer_fat_minor: hypothesis guarantees a minor but exhaustive search found none");
}

}  // namespace cwl
