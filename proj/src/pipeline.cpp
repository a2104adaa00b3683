#include "cwl/pipeline.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace cwl {

namespace {

std::string vset_brief(const VertexSet& vs) {
  if (vs.empty()) return "{}";
  std::string s = "{" + std::to_string(vs.front());
  if (vs.size() > 1) s += ".." + std::to_string(vs.back());
  s += "|" + std::to_string(vs.size()) + "}";
  return s;
}

int min_dist_to(const std::vector<int>& dist, const VertexSet& vs) {
  int best = kInfDist;
  for (int v : vs) best = std::min(best, dist[v]);
  return best;
}

int clamp_depth(long long depth, int n) {
  return static_cast<int>(std::min<long long>(depth, n));
}

// BFS path from `sources` to the first vertex of `targets` whose interior
// stays inside `allowed`; deterministic via ascending neighbor order.
std::vector<int> restricted_path(const Graph& g, const VertexSet& sources,
                                 const VertexSet& targets, const std::vector<char>& allowed) {
  std::vector<int> par(g.vertex_count(), -2);
  std::deque<int> queue;
  auto tmask = make_mask(g.vertex_count(), targets);
  for (int s : sources) {
    if (par[s] != -2) continue;
    par[s] = -1;
    if (tmask[s]) return {s};
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int w : g.neighbors(u)) {
      if (par[w] != -2) continue;
      if (!allowed[w] && !tmask[w]) continue;
      par[w] = u;
      if (tmask[w]) {
        std::vector<int> path{w};
        for (int v = u; v != -1; v = par[v]) path.push_back(v);
        std::reverse(path.begin(), path.end());
        return path;
      }
      queue.push_back(w);
    }
  }
  return {};
}

std::vector<std::vector<int>> component_split(const std::vector<int>& nodes,
                                              const std::map<int, std::vector<int>>& adj) {
  std::vector<std::vector<int>> comps;
  std::set<int> todo(nodes.begin(), nodes.end());
  while (!todo.empty()) {
    int s = *todo.begin();
    std::vector<int> comp;
    std::deque<int> queue{s};
    todo.erase(s);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      comp.push_back(u);
      auto it = adj.find(u);
      if (it == adj.end()) continue;
      for (int w : it->second) {
        auto jt = todo.find(w);
        if (jt != todo.end()) {
          todo.erase(jt);
          queue.push_back(w);
        }
      }
    }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  std::sort(comps.begin(), comps.end());
  return comps;
}

}  // namespace

std::string building_class_name(BuildingClass c) {
  switch (c) {
    case BuildingClass::House: return "house";
    case BuildingClass::Fort: return "fort";
    case BuildingClass::Castle: return "castle";
  }
  return "?";
}

Pipeline::Pipeline(const Graph& g, TieBreaker tb, Schedule sched)
    : g_(g), tb_(std::move(tb)), sched_(std::move(sched)) {}

void Pipeline::log(int century, const std::string& op, const std::string& detail) {
  audit_.push_back({century, op, detail});
}

// ---------------------------------------------------------------------------
// State caches

void Pipeline::refresh_state(RealmState& s, bool rebuild_boundary_covers) const {
  // Snapshot old community records keyed by their member vertex sets.
  struct OldRec {
    std::vector<VertexSet> member_sets;
    VertexSet boundary_centers;
    long long boundary_radius;
    std::optional<QuasiBoundCert> cell_cert;
  };
  std::vector<OldRec> old;
  for (const auto& rec : s.communities) {
    OldRec o;
    for (int i : rec.members) o.member_sets.push_back(s.buildings[i].verts);
    o.boundary_centers = rec.boundary_centers;
    o.boundary_radius = rec.boundary_radius;
    o.cell_cert = rec.cell_cert;
    old.push_back(std::move(o));
  }

  std::sort(s.buildings.begin(), s.buildings.end(),
            [](const Building& a, const Building& b) { return a.verts < b.verts; });

  std::vector<VertexSet> sets;
  sets.reserve(s.buildings.size());
  for (const auto& b : s.buildings) sets.push_back(b.verts);
  s.voronoi = voronoi_partition(g_, tb_, sets);

  const int m = static_cast<int>(s.buildings.size());
  std::vector<std::set<int>> adj(m);
  for (auto [u, v] : g_.edges()) {
    int ou = s.voronoi.field.owner[u];
    int ov = s.voronoi.field.owner[v];
    if (ou != ov) {
      adj[ou].insert(ov);
      adj[ov].insert(ou);
    }
  }
  s.adjoin.assign(m, {});
  for (int i = 0; i < m; ++i) s.adjoin[i] = std::vector<int>(adj[i].begin(), adj[i].end());

  std::vector<int> houses;
  std::map<int, std::vector<int>> house_adj;
  for (int i = 0; i < m; ++i) {
    if (s.buildings[i].cls != BuildingClass::House) continue;
    houses.push_back(i);
    for (int j : s.adjoin[i])
      if (s.buildings[j].cls == BuildingClass::House) house_adj[i].push_back(j);
  }
  auto comps = component_split(houses, house_adj);

  s.communities.clear();
  for (auto& comp : comps) {
    CommunityRecord rec;
    rec.members = comp;
    std::vector<VertexSet> member_sets;
    for (int i : comp) member_sets.push_back(s.buildings[i].verts);
    for (auto& o : old) {
      if (o.member_sets == member_sets) {
        rec.boundary_centers = o.boundary_centers;
        rec.boundary_radius = o.boundary_radius;
        rec.cell_cert = o.cell_cert;
        break;
      }
    }
    s.communities.push_back(std::move(rec));
  }

  if (rebuild_boundary_covers) {
    const long long alpha = sched_.alpha[s.century];
    const long long beta = sched_.beta[s.century];
    for (auto& rec : s.communities) {
      VertexSet target;
      for (int i : rec.members) target = set_union(target, g_.boundary(s.buildings[i].verts));
      if (!rec.boundary_centers.empty() &&
          static_cast<long long>(rec.boundary_centers.size()) <= alpha &&
          rec.boundary_radius <= beta &&
          verify_quasi_size(g_, target, {rec.boundary_centers, alpha, rec.boundary_radius}))
        continue;
      VertexSet cand;
      long long rad = 0;
      for (int i : rec.members) {
        cand = set_union(cand, s.buildings[i].cert.boundary_centers);
        rad = std::max(rad, s.buildings[i].cert.boundary_b);
      }
      if (static_cast<long long>(cand.size()) <= alpha && rad <= beta &&
          verify_quasi_size(g_, target, {cand, alpha, rad})) {
        rec.boundary_centers = cand;
        rec.boundary_radius = rad;
        continue;
      }
      auto found = find_quasi_center(g_, target, alpha, beta);
      if (!found)
        throw std::logic_error("community boundary cover not found at (" +
                               std::to_string(alpha) + "," + std::to_string(beta) + ")");
      rec.boundary_centers = found->center.centers;
      rec.boundary_radius = beta;
    }
  }
}

// ---------------------------------------------------------------------------
// Societies

RealmState Pipeline::initial_society() {
  if (!g_.is_connected()) throw GraphError("initial_society: graph must be connected");
  RealmState s;
  s.century = 0;
  s.kind = StateKind::Society;

  std::vector<int> mindist(g_.vertex_count(), kInfDist);
  for (int v = 0; v < g_.vertex_count(); ++v) {
    if (mindist[v] != kInfDist && mindist[v] <= sched_.d0) continue;
    Building fort;
    fort.verts = {v};
    fort.cls = BuildingClass::Fort;
    fort.cert = trivial_cert(g_, {v}, sched_.alpha[0], sched_.beta[0]);
    FatModel m;
    m.c = sched_.c;
    m.vertex_parts = {{v}};
    fort.model = std::move(m);
    fort.model_ell = 0;
    s.buildings.push_back(std::move(fort));

    auto dist = g_.multi_source_distances({v}, clamp_depth(sched_.d0, g_.vertex_count()));
    for (int u = 0; u < g_.vertex_count(); ++u)
      if (dist[u] != kInfDist) mindist[u] = std::min(mindist[u], dist[u]);
  }
  refresh_state(s, false);
  auto chk = verify_society(s);
  if (!chk) throw std::logic_error("initial_society violates: " + chk.bullet);
  log(0, "initial_society", "forts=" + std::to_string(s.buildings.size()));
  return s;
}

StateCheck Pipeline::verify_common_bullets(const RealmState& s) const {
  const int k = s.century;
  const long long alpha = sched_.alpha[k];
  const long long beta = sched_.beta[k];

  if (s.buildings.empty()) return {false, "no buildings"};
  for (const auto& b : s.buildings)
    if (!g_.is_connected_induced(b.verts))
      return {false, "building " + vset_brief(b.verts) + " not connected"};

  VertexSet all;
  for (const auto& b : s.buildings) all = set_union(all, b.verts);
  auto dist = g_.multi_source_distances(all);
  for (int v = 0; v < g_.vertex_count(); ++v)
    if (dist[v] == kInfDist || dist[v] > sched_.d0)
      return {false, "covering: vertex " + std::to_string(v) + " beyond d0"};

  const long long thr_max = sched_.delta_at(k, std::max(0, 2 * k - 2));
  for (std::size_t i = 0; i < s.buildings.size(); ++i) {
    auto di = g_.multi_source_distances(s.buildings[i].verts,
                                        clamp_depth(thr_max + 1, g_.vertex_count()));
    for (std::size_t j = i + 1; j < s.buildings.size(); ++j) {
      int idx = s.buildings[i].rank(k) + s.buildings[j].rank(k);
      long long need = sched_.delta_at(k, idx);
      int dij = min_dist_to(di, s.buildings[j].verts);
      if (dij <= need)
        return {false, "separation: " + vset_brief(s.buildings[i].verts) + "," +
                           vset_brief(s.buildings[j].verts) + " at distance " +
                           std::to_string(dij) + " <= delta(" + std::to_string(idx) + ")"};
    }
  }

  for (const auto& b : s.buildings) {
    if (b.cls == BuildingClass::House) continue;
    int rk = b.rank(k);
    if (!b.model || b.model_ell != rk)
      return {false, "missing H_" + std::to_string(rk) + " model on a " +
                         building_class_name(b.cls)};
    if (b.model->c != sched_.c) return {false, "witness model built at a different c"};
    auto mc = verify_superfat(g_, build_pattern_tree(rk), *b.model);
    if (!mc) return {false, "witness model invalid: " + mc.violation};
    if (!is_subset(b.model->all_vertices(), b.verts))
      return {false, "witness model escapes its building"};

    long long la = b.cls == BuildingClass::Fort ? alpha : 8 * alpha;
    long long lb = b.cls == BuildingClass::Fort ? beta : beta + (sched_.ell - k) * sched_.d0;
    auto cc = cert_meets(g_, b.cert, la, lb);
    if (!cc)
      return {false, building_class_name(b.cls) + " certificate fails: " + cc.violation};
  }
  return {};
}

StateCheck Pipeline::verify_society(const RealmState& s) const {
  if (s.kind != StateKind::Society) return {false, "state is not a society"};
  for (const auto& b : s.buildings)
    if (b.cls == BuildingClass::Castle) return {false, "society holds a castle"};
  auto common = verify_common_bullets(s);
  if (!common) return common;

  const long long alpha = sched_.alpha[s.century];
  const long long beta = sched_.beta[s.century];
  for (const auto& rec : s.communities) {
    if (!rec.cell_cert) return {false, "maximal house community without a cell certificate"};
    VertexSet cells;
    for (int i : rec.members) cells = set_union(cells, s.voronoi.cells[i]);
    if (rec.cell_cert->subject != cells)
      return {false, "community cell certificate covers the wrong set"};
    auto cc = cert_meets(g_, *rec.cell_cert, alpha, beta - sched_.d0);
    if (!cc) return {false, "community cell certificate fails: " + cc.violation};
  }
  return {};
}

StateCheck Pipeline::verify_realm(const RealmState& s) const {
  if (s.kind != StateKind::Realm) return {false, "state is not a realm"};
  auto common = verify_common_bullets(s);
  if (!common) return common;

  const long long alpha = sched_.alpha[s.century];
  const long long beta = sched_.beta[s.century];

  // Community bullet, in finite form: each house certificate meets
  // (alpha, beta) — concatenation certifies any union, there being no edges
  // between members — and each maximal community carries one collective
  // boundary cover; sub-community boundaries are subsets of it.
  for (const auto& b : s.buildings) {
    if (b.cls != BuildingClass::House) continue;
    auto cc = cert_meets(g_, b.cert, alpha, beta);
    if (!cc) return {false, "house certificate fails: " + cc.violation};
  }
  for (const auto& rec : s.communities) {
    if (static_cast<long long>(rec.boundary_centers.size()) > alpha ||
        rec.boundary_radius > beta)
      return {false, "community boundary cover exceeds (alpha, beta)"};
    VertexSet target;
    for (int i : rec.members) target = set_union(target, g_.boundary(s.buildings[i].verts));
    if (!verify_quasi_size(g_, target, {rec.boundary_centers, alpha, rec.boundary_radius}))
      return {false, "community boundary cover misses a member boundary"};
  }
  return {};
}

RealmState Pipeline::society_to_realm(RealmState s) {
  if (s.kind != StateKind::Society)
    throw GraphError("society_to_realm: input must be a society");
  const int k = s.century;
  int grows = 0;

  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t bi = 0; bi < s.buildings.size(); ++bi) {
      if (s.buildings[bi].cls != BuildingClass::House) continue;
      auto frontier = g_.boundary(s.buildings[bi].verts);
      for (int v : frontier) {
        for (int u : g_.neighbors(v)) {
          if (set_contains(s.buildings[bi].verts, u)) continue;
          if (s.voronoi.field.owner[u] != static_cast<int>(bi)) continue;
          bool in_building = false;
          for (const auto& b : s.buildings)
            if (set_contains(b.verts, u)) in_building = true;
          if (in_building) continue;

          const long long thr = sched_.delta_at(k, std::max(0, 2 * k - 2));
          auto du = g_.multi_source_distances({u}, clamp_depth(thr + 1, g_.vertex_count()));
          bool ok = true;
          for (std::size_t j = 0; j < s.buildings.size() && ok; ++j) {
            if (j == bi) continue;
            int idx = (k - 1) + s.buildings[j].rank(k);
            if (min_dist_to(du, s.buildings[j].verts) <= sched_.delta_at(k, idx)) ok = false;
          }
          if (!ok) continue;

          // No Voronoi capture: no vertex outside this cell would switch to u.
          auto fu = lambda_field(g_, tb_, {{u}});
          for (int w = 0; w < g_.vertex_count() && ok; ++w) {
            if (s.voronoi.field.owner[w] == static_cast<int>(bi)) continue;
            if (fu.dist[w] > s.voronoi.field.dist[w]) continue;
            if (fu.dist[w] < s.voronoi.field.dist[w]) {
              ok = false;
              break;
            }
            auto cand = fu.ranks_from(w);
            auto cur = s.voronoi.field.ranks_from(w);
            if (cand < cur) ok = false;
          }
          if (!ok) continue;

          s.buildings[bi].verts = set_union(s.buildings[bi].verts, {u});
          ++grows;
          progress = true;
        }
      }
    }
  }

  auto owners_before = s.voronoi.field.owner;
  auto old_communities = s.communities;  // cell certificates survive unchanged cells
  refresh_state(s, false);
  if (s.voronoi.field.owner != owners_before)
    throw std::logic_error("society_to_realm: growth changed the Voronoi partition");

  // Claim check: every house boundary vertex within d0 of its cell boundary.
  for (std::size_t bi = 0; bi < s.buildings.size(); ++bi) {
    if (s.buildings[bi].cls != BuildingClass::House) continue;
    auto bd_house = g_.boundary(s.buildings[bi].verts);
    if (bd_house.empty()) continue;
    auto bd_cell = g_.boundary(s.voronoi.cells[bi]);
    if (bd_cell.empty())
      throw std::logic_error("society_to_realm: bounded house fills its component");
    auto dist =
        g_.multi_source_distances(bd_cell, clamp_depth(sched_.d0, g_.vertex_count()));
    for (int v : bd_house)
      if (dist[v] == kInfDist || dist[v] > sched_.d0)
        throw std::logic_error(
            "society_to_realm: house boundary vertex beyond d0 of its cell boundary");
  }

  // House certificates: restrictions of the community cell certificates.
  for (auto& rec : s.communities) {
    if (!rec.cell_cert)
      throw std::logic_error("society_to_realm: community lacks a cell certificate");
    for (int i : rec.members)
      s.buildings[i].cert = restrict_cert(*rec.cell_cert, s.buildings[i].verts);
  }

  s.kind = StateKind::Realm;
  refresh_state(s, true);
  for (const auto& rec : s.communities)
    for (int i : rec.members) {
      s.buildings[i].cert.boundary_centers = rec.boundary_centers;
      s.buildings[i].cert.boundary_a = static_cast<long long>(rec.boundary_centers.size());
      s.buildings[i].cert.boundary_b = rec.boundary_radius;
    }

  auto chk = verify_realm(s);
  if (!chk) throw std::logic_error("society_to_realm violates: " + chk.bullet);
  log(k, "society_to_realm", "grows=" + std::to_string(grows));
  return s;
}

// ---------------------------------------------------------------------------
// Passages

StateCheck Pipeline::verify_passage(const RealmState& s, const Passage& p,
                                    long long max_len) const {
  const int k = s.century;
  const auto& path = p.path.verts;
  if (!p.path.valid_in(g_)) return {false, "passage is not a simple path"};
  if (p.path.length() > max_len) return {false, "passage exceeds the length cap"};
  const auto& from = s.buildings[p.from];
  const auto& to = s.buildings[p.to];
  if (from.cls == BuildingClass::Castle || to.cls == BuildingClass::Castle)
    return {false, "passage endpoint is a castle"};
  if (!set_contains(from.verts, path.front()) || !set_contains(to.verts, path.back()))
    return {false, "passage endpoints misplaced"};
  for (std::size_t i = 1; i + 1 < path.size(); ++i)
    if (set_contains(from.verts, path[i]) || set_contains(to.verts, path[i]))
      return {false, "passage re-enters an endpoint building"};

  for (std::size_t i = 0; i < path.size(); ++i)
    for (std::size_t j = i + 2; j < path.size(); ++j)
      if (g_.has_edge(path[i], path[j])) return {false, "passage has a chord"};

  VertexSet pset = make_vertex_set(path);
  const long long thr = sched_.delta_at(k, 2 * k);
  auto dp = g_.multi_source_distances(pset, clamp_depth(thr + 1, g_.vertex_count()));
  for (std::size_t j = 0; j < s.buildings.size(); ++j) {
    if (static_cast<int>(j) == p.from || static_cast<int>(j) == p.to) continue;
    int idx = k + 1 + s.buildings[j].rank(k);
    if (min_dist_to(dp, s.buildings[j].verts) <= sched_.delta_at(k, idx))
      return {false, "passage too close to a third building"};
  }

  const long long c = sched_.c;
  const int n = static_cast<int>(path.size());
  auto check_end = [&](const Building& b, bool from_side) -> bool {
    auto db = g_.multi_source_distances(b.verts, clamp_depth(c, g_.vertex_count()));
    for (int i = 0; i < n; ++i) {
      int pos = from_side ? i : n - 1 - i;
      long long d = db[path[pos]] == kInfDist ? c + 1 : db[path[pos]];
      if (i <= c) {
        if (d != i) return false;  // geodesic end segment
      } else {
        if (d <= c) return false;  // the rest stays outside the radius-c ball
      }
    }
    return true;
  };
  if (!check_end(from, true)) return {false, "passage end segment fails at its source"};
  if (!check_end(to, false)) return {false, "passage end segment fails at its target"};
  return {};
}

std::optional<Passage> Pipeline::passage_between(const RealmState& s, int i, int j,
                                                 long long max_len) const {
  // Shortest building-to-building path inside the two cells; all passage
  // conditions verified afterwards.
  VertexSet zone = set_union(s.voronoi.cells[i], s.voronoi.cells[j]);
  auto allowed = make_mask(g_.vertex_count(), zone);
  auto path = restricted_path(g_, s.buildings[i].verts, s.buildings[j].verts, allowed);
  if (path.empty()) return std::nullopt;
  Passage p;
  p.from = i;
  p.to = j;
  p.path.verts = std::move(path);
  if (verify_passage(s, p, max_len)) return p;
  return std::nullopt;
}

std::vector<Passage> Pipeline::find_passages(const RealmState& s, long long max_len) const {
  if (max_len < 0) max_len = (sched_.ell - s.century) * sched_.d0 + 1;
  std::vector<Passage> out;
  for (std::size_t i = 0; i < s.buildings.size(); ++i) {
    if (s.buildings[i].cls == BuildingClass::Castle) continue;
    for (int j : s.adjoin[i]) {
      if (j <= static_cast<int>(i)) continue;
      if (s.buildings[j].cls == BuildingClass::Castle) continue;
      if (auto p = passage_between(s, static_cast<int>(i), j, max_len)) out.push_back(*p);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Contact structure

StructureReport Pipeline::classify_rebel_structure(const RealmState& s,
                                                   const std::vector<int>& members) const {
  StructureReport rep;

  // Split into adjoin-connected components first; the contact-graph facts
  // are per component.
  std::map<int, std::vector<int>> madj;
  for (int i : members)
    for (int j : s.adjoin[i])
      if (std::find(members.begin(), members.end(), j) != members.end())
        madj[i].push_back(j);
  auto comps = component_split(members, madj);

  for (const auto& comp : comps) {
    std::vector<int> forts;
    std::vector<int> houses;
    for (int i : comp) {
      if (s.buildings[i].cls == BuildingClass::Fort) forts.push_back(i);
      if (s.buildings[i].cls == BuildingClass::House) houses.push_back(i);
    }

    std::map<int, std::vector<int>> house_adj;
    for (int h : houses)
      for (int j : s.adjoin[h])
        if (std::find(houses.begin(), houses.end(), j) != houses.end())
          house_adj[h].push_back(j);
    auto comms = component_split(houses, house_adj);

    auto fort_adjoins_comm = [&](int fort, const std::vector<int>& comm) {
      for (int h : comm)
        if (std::find(s.adjoin[fort].begin(), s.adjoin[fort].end(), h) !=
            s.adjoin[fort].end())
          return true;
      return false;
    };

    for (const auto& comm : comms) {
      std::vector<int> touching;
      for (int f : forts)
        if (fort_adjoins_comm(f, comm)) touching.push_back(f);
      if (touching.size() > 2) {
        rep.ok = false;
        rep.violation = "community adjoins more than two forts";
        rep.violating_forts = touching;
        return rep;
      }
    }

    std::vector<std::vector<int>> sadj(forts.size());
    for (std::size_t a = 0; a < forts.size(); ++a)
      for (std::size_t b = a + 1; b < forts.size(); ++b) {
        bool direct = std::find(s.adjoin[forts[a]].begin(), s.adjoin[forts[a]].end(),
                                forts[b]) != s.adjoin[forts[a]].end();
        bool via_comm = false;
        for (const auto& comm : comms)
          if (fort_adjoins_comm(forts[a], comm) && fort_adjoins_comm(forts[b], comm))
            via_comm = true;
        if (direct || via_comm) {
          sadj[a].push_back(static_cast<int>(b));
          sadj[b].push_back(static_cast<int>(a));
          rep.semiadjoin_pairs.emplace_back(forts[a], forts[b]);
        }
      }
    for (std::size_t a = 0; a < forts.size(); ++a) {
      if (sadj[a].size() > 2) {
        rep.ok = false;
        rep.violation = "fort semiadjoins more than two forts";
        rep.violating_forts = {forts[a]};
        for (int b : sadj[a]) rep.violating_forts.push_back(forts[b]);
        return rep;
      }
    }

    if (forts.empty()) continue;
    std::size_t start = 0;
    bool has_end = false;
    for (std::size_t a = 0; a < forts.size(); ++a)
      if (sadj[a].size() <= 1) {
        start = a;
        has_end = true;
        break;
      }
    std::vector<char> seen(forts.size(), 0);
    std::vector<int> order;
    std::size_t cur = start;
    seen[cur] = 1;
    order.push_back(forts[cur]);
    while (true) {
      int next = -1;
      for (int nb : sadj[cur])
        if (!seen[nb]) {
          next = nb;
          break;
        }
      if (next == -1) break;
      seen[next] = 1;
      order.push_back(forts[next]);
      cur = static_cast<std::size_t>(next);
    }
    if (order.size() != forts.size()) {
      rep.ok = false;
      rep.violation = "fort semiadjoin graph disconnected within an adjoin component";
      return rep;
    }
    rep.fort_chains.push_back(std::move(order));
    rep.chain_cycle.push_back(!has_end && forts.size() > 2);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Castle moves

namespace {

Passage oriented(const Passage& p, int from) {
  if (p.from == from) return p;
  Passage q;
  q.from = p.to;
  q.to = p.from;
  q.path.verts.assign(p.path.verts.rbegin(), p.path.verts.rend());
  return q;
}

}  // namespace

std::optional<CastleMove> Pipeline::find_castle_move(const RealmState& s) const {
  if (s.kind != StateKind::Realm) throw GraphError("find_castle_move: realm required");
  const int k = s.century;
  const long long max_len = (sched_.ell - k) * sched_.d0 + 1;

  std::vector<int> forts;
  for (std::size_t i = 0; i < s.buildings.size(); ++i)
    if (s.buildings[i].cls == BuildingClass::Fort) forts.push_back(static_cast<int>(i));
  if (forts.size() < 3) return std::nullopt;

  std::map<std::pair<int, int>, Passage> pmap;
  for (auto& p : find_passages(s, max_len)) pmap[{std::min(p.from, p.to), std::max(p.from, p.to)}] = p;
  auto get_passage = [&](int a, int b) -> std::optional<Passage> {
    auto it = pmap.find({std::min(a, b), std::max(a, b)});
    if (it == pmap.end()) return std::nullopt;
    return oriented(it->second, a);
  };

  // Assembles and validates a candidate configuration: three tip forts with
  // their passages into the hub, plus connector passages joining the hub.
  auto try_move = [&](const std::array<int, 3>& tips, const std::vector<int>& hub,
                      const std::array<Passage, 3>& tip_passages,
                      const std::vector<Passage>& connectors) -> std::optional<CastleMove> {
    int hub_forts = 0, hub_houses = 0;
    for (int h : hub) {
      if (s.buildings[h].cls == BuildingClass::Castle) return std::nullopt;
      if (s.buildings[h].cls == BuildingClass::Fort) ++hub_forts;
      if (s.buildings[h].cls == BuildingClass::House) ++hub_houses;
    }
    // Count the maximal communities meeting the hub houses.
    int hub_comms = 0;
    for (const auto& rec : s.communities) {
      for (int m : rec.members)
        if (std::find(hub.begin(), hub.end(), m) != hub.end()) {
          ++hub_comms;
          break;
        }
    }
    int m1 = 3 + hub_forts;
    int m2 = hub_comms;
    if (m1 + m2 > 7) return std::nullopt;

    for (int t : tips) {
      if (std::find(hub.begin(), hub.end(), t) != hub.end()) return std::nullopt;
      for (const auto& cp : connectors)
        if (cp.from == t || cp.to == t) return std::nullopt;
    }
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b)
        if (a != b && (tip_passages[a].from == tips[b] || tip_passages[a].to == tips[b]))
          return std::nullopt;

    CastleMove move;
    move.tips = {tips[0], tips[1], tips[2]};
    move.hub = hub;
    for (const auto& p : tip_passages) move.passages.push_back(p);
    for (const auto& p : connectors) move.passages.push_back(p);

    VertexSet w;
    for (int h : hub) w = set_union(w, s.buildings[h].verts);
    for (const auto& p : move.passages) w = set_union(w, make_vertex_set(p.path.verts));
    VertexSet tipset;
    for (int t : tips) tipset = set_union(tipset, s.buildings[t].verts);
    w = set_difference(w, tipset);
    if (!g_.is_connected_induced(w)) return std::nullopt;
    move.w = w;
    move.z = set_union(w, tipset);

    // Every member is either far from W or swallowed whole by Z at rank <= k.
    const long long thr = sched_.delta_at(k, 2 * k);
    auto dw = g_.multi_source_distances(w, clamp_depth(thr + 1, g_.vertex_count()));
    for (std::size_t j = 0; j < s.buildings.size(); ++j) {
      const auto& y = s.buildings[j];
      if (is_subset(y.verts, move.z)) {
        if (y.rank(k) > k) return std::nullopt;
        continue;
      }
      int idx = k + 1 + y.rank(k);
      if (min_dist_to(dw, y.verts) <= sched_.delta_at(k, idx)) return std::nullopt;
    }

    // c-legs: inside W, only the passage end segment comes within c of a tip.
    const long long c = sched_.c;
    for (int a = 0; a < 3; ++a) {
      auto dt = g_.multi_source_distances(s.buildings[tips[a]].verts,
                                          clamp_depth(c, g_.vertex_count()));
      VertexSet close;
      for (int v : w)
        if (dt[v] != kInfDist && dt[v] <= c) close.push_back(v);
      const auto& path = tip_passages[a].path.verts;  // oriented tip -> hub
      VertexSet seg;
      for (std::size_t i = 1; i < path.size() && static_cast<long long>(i) <= c; ++i)
        seg.push_back(path[i]);
      seg = make_vertex_set(std::move(seg));
      if (close != seg) return std::nullopt;
    }

    // Z certificate: building pieces concatenated, all passage vertices added
    // to every bag, centered on the union of the piece boundary centers.
    std::vector<QuasiBoundCert> certs;
    VertexSet extra_centers;
    for (int t : tips) {
      certs.push_back(s.buildings[t].cert);
      extra_centers = set_union(extra_centers, s.buildings[t].cert.boundary_centers);
    }
    for (int h : hub) {
      certs.push_back(s.buildings[h].cert);
      extra_centers = set_union(extra_centers, s.buildings[h].cert.boundary_centers);
    }
    QuasiBoundCert base;
    try {
      base = concat_certs(g_, certs);
    } catch (const GraphError&) {
      return std::nullopt;
    }
    VertexSet extra = set_difference(move.z, base.subject);
    const long long blimit = sched_.beta[k] + (sched_.ell - k) * sched_.d0;
    auto de = g_.multi_source_distances(extra_centers, clamp_depth(blimit, g_.vertex_count()));
    long long extra_radius = 0;
    for (int v : extra) {
      if (de[v] == kInfDist) return std::nullopt;
      extra_radius = std::max<long long>(extra_radius, de[v]);
    }
    auto z_cert = pad_cert_with_set(g_, base, extra, extra_centers, extra_radius);
    z_cert.boundary_centers = extra_centers;
    long long bd_radius = 0;
    for (int v : g_.boundary(move.z)) {
      if (de[v] == kInfDist) return std::nullopt;
      bd_radius = std::max<long long>(bd_radius, de[v]);
    }
    z_cert.boundary_a = static_cast<long long>(extra_centers.size());
    z_cert.boundary_b = std::max(base.boundary_b, bd_radius);
    if (!cert_meets(g_, z_cert, 8 * sched_.alpha[k], blimit)) return std::nullopt;
    move.z_cert = std::move(z_cert);
    return move;
  };

  // Hub shapes, in canonical order: a single fort; a maximal community; a
  // fort together with up to three communities adjoining it.
  for (int h : forts) {
    std::vector<int> tips;
    std::vector<Passage> tp;
    for (int t : forts) {
      if (t == h) continue;
      if (auto p = get_passage(t, h)) {
        tips.push_back(t);
        tp.push_back(*p);
      }
    }
    if (tips.size() < 3) continue;
    for (std::size_t a = 0; a < tips.size(); ++a)
      for (std::size_t b = a + 1; b < tips.size(); ++b)
        for (std::size_t d = b + 1; d < tips.size(); ++d) {
          if (auto mv = try_move({tips[a], tips[b], tips[d]}, {h}, {tp[a], tp[b], tp[d]}, {}))
            return mv;
        }
  }

  for (const auto& rec : s.communities) {
    // Connectors: passages realizing a spanning tree of the community.
    std::vector<Passage> connectors;
    bool spanning_ok = true;
    if (rec.members.size() > 1) {
      std::set<int> reached{rec.members.front()};
      while (reached.size() < rec.members.size() && spanning_ok) {
        bool grew = false;
        for (int m : rec.members) {
          if (reached.count(m)) continue;
          for (int r : rec.members) {
            if (!reached.count(r)) continue;
            if (std::find(s.adjoin[m].begin(), s.adjoin[m].end(), r) == s.adjoin[m].end())
              continue;
            if (auto p = get_passage(r, m)) {
              connectors.push_back(*p);
              reached.insert(m);
              grew = true;
              break;
            }
          }
          if (grew) break;
        }
        if (!grew) spanning_ok = false;
      }
    }
    if (!spanning_ok) continue;

    std::vector<int> tips;
    std::vector<Passage> tp;
    for (int t : forts) {
      for (int m : rec.members) {
        if (auto p = get_passage(t, m)) {
          tips.push_back(t);
          tp.push_back(*p);
          break;
        }
      }
    }
    if (tips.size() < 3) continue;
    for (std::size_t a = 0; a < tips.size(); ++a)
      for (std::size_t b = a + 1; b < tips.size(); ++b)
        for (std::size_t d = b + 1; d < tips.size(); ++d) {
          if (auto mv = try_move({tips[a], tips[b], tips[d]}, rec.members,
                                 {tp[a], tp[b], tp[d]}, connectors))
            return mv;
        }
  }

  // Fort hub extended by the communities adjoining it (the contact-graph
  // violation shape).
  for (int h : forts) {
    std::vector<int> hub{h};
    std::vector<Passage> connectors;
    int comms_used = 0;
    for (const auto& rec : s.communities) {
      bool adjacent = false;
      int attach = -1;
      for (int m : rec.members)
        if (std::find(s.adjoin[h].begin(), s.adjoin[h].end(), m) != s.adjoin[h].end()) {
          adjacent = true;
          attach = m;
          break;
        }
      if (!adjacent || comms_used >= 3) continue;
      auto attach_passage = get_passage(h, attach);
      if (!attach_passage) continue;
      // Spanning connectors within the community from the attachment.
      std::vector<Passage> inner{*attach_passage};
      std::set<int> reached{attach};
      bool ok = true;
      while (reached.size() < rec.members.size() && ok) {
        bool grew = false;
        for (int m : rec.members) {
          if (reached.count(m)) continue;
          for (int r : rec.members) {
            if (!reached.count(r)) continue;
            if (std::find(s.adjoin[m].begin(), s.adjoin[m].end(), r) == s.adjoin[m].end())
              continue;
            if (auto p = get_passage(r, m)) {
              inner.push_back(*p);
              reached.insert(m);
              grew = true;
              break;
            }
          }
          if (grew) break;
        }
        if (!grew) ok = false;
      }
      if (!ok) continue;
      ++comms_used;
      hub.insert(hub.end(), rec.members.begin(), rec.members.end());
      connectors.insert(connectors.end(), inner.begin(), inner.end());
    }
    if (hub.size() == 1) continue;

    std::vector<int> tips;
    std::vector<Passage> tp;
    for (int t : forts) {
      if (t == h) continue;
      if (std::find(hub.begin(), hub.end(), t) != hub.end()) continue;
      for (int m : hub) {
        if (auto p = get_passage(t, m)) {
          tips.push_back(t);
          tp.push_back(*p);
          break;
        }
      }
    }
    if (tips.size() < 3) continue;
    for (std::size_t a = 0; a < tips.size(); ++a)
      for (std::size_t b = a + 1; b < tips.size(); ++b)
        for (std::size_t d = b + 1; d < tips.size(); ++d) {
          if (auto mv = try_move({tips[a], tips[b], tips[d]}, hub, {tp[a], tp[b], tp[d]},
                                 connectors))
            return mv;
        }
  }
  return std::nullopt;
}

FatModel Pipeline::build_claw_model(const VertexSet& region,
                                    const std::array<const FatModel*, 3>& models, int t) {
  std::vector<VertexSet> unions;
  for (const auto* m : models) unions.push_back(m->all_vertices());
  auto w = trim_for_claw(g_, region, unions, sched_.c, -1);
  std::array<FatModel, 3> ms{*models[0], *models[1], *models[2]};
  auto legs = make_claw_legs(g_, tb_, w, ms);
  return claw_combine(g_, t, ms, w, legs, sched_.c);
}

std::variant<RealmState, Witness> Pipeline::apply_castle_move(const RealmState& s,
                                                              const CastleMove& move) {
  const int k = s.century;

  VertexSet region = move.w;
  std::array<const FatModel*, 3> models{};
  for (int i = 0; i < 3; ++i) {
    const auto& tip = s.buildings[move.tips[i]];
    if (!tip.model || tip.model_ell != k)
      throw std::logic_error("apply_castle_move: tip fort lacks an H_k model");
    models[i] = &*tip.model;
    // Corridor from the passage end into the model, inside the fort.
    int p = move.passages[i].path.verts.front();
    auto allowed = make_mask(g_.vertex_count(), tip.verts);
    auto corridor = restricted_path(g_, {p}, tip.model->all_vertices(), allowed);
    if (corridor.empty())
      throw std::logic_error("apply_castle_move: no corridor from passage to model");
    corridor.pop_back();
    region = set_union(region, make_vertex_set(std::move(corridor)));
  }

  auto model = build_claw_model(region, models, k);
  if (k + 1 == sched_.ell) {
    log(k, "castle_move", "witness H_" + std::to_string(sched_.ell) + " from tips " +
                              vset_brief(move.z));
    return Witness{sched_.ell, std::move(model)};
  }

  if (!is_subset(model.all_vertices(), move.z))
    throw std::logic_error("apply_castle_move: castle model escapes Z");

  Building castle;
  castle.verts = move.z;
  castle.cls = BuildingClass::Castle;
  castle.cert = move.z_cert;
  castle.model = std::move(model);
  castle.model_ell = k + 1;

  RealmState next = s;
  std::vector<Building> keep;
  for (auto& b : next.buildings)
    if (!is_subset(b.verts, move.z)) keep.push_back(std::move(b));
  keep.push_back(std::move(castle));
  next.buildings = std::move(keep);
  refresh_state(next, true);
  auto chk = verify_realm(next);
  if (!chk) throw std::logic_error("apply_castle_move violates: " + chk.bullet);
  log(k, "castle_move", "castle " + vset_brief(move.z) + " absorbing " +
                            std::to_string(s.buildings.size() - next.buildings.size() + 1) +
                            " members");
  return next;
}

// ---------------------------------------------------------------------------
// Cell-union certificate (contact-graph composition)

QuasiBoundCert Pipeline::build_cell_union_cert(const RealmState& s) const {
  const int k = s.century;
  const long long beta = sched_.beta[k];

  // Pieces: one per fort (its cell) and one per maximal community (the union
  // of member cells).
  struct Piece {
    std::vector<int> buildings;
    bool is_fort = false;
    VertexSet verts;
    QuasiBoundCert cert;
  };
  std::vector<Piece> pieces;
  std::vector<int> fort_piece(s.buildings.size(), -1);

  auto finish_piece = [&](Piece& piece, const QuasiBoundCert& base,
                          const VertexSet& bd_centers, long long bd_radius) {
    VertexSet extra = set_difference(piece.verts, base.subject);
    long long lim = beta + 2 * sched_.d0 + bd_radius;
    auto de = g_.multi_source_distances(bd_centers, clamp_depth(lim, g_.vertex_count()));
    long long radius = 0;
    for (int v : extra) {
      if (de[v] == kInfDist)
        throw std::logic_error("cell union certificate: cell vertex beyond reach");
      radius = std::max<long long>(radius, de[v]);
    }
    piece.cert = pad_cert_with_set(g_, base, extra, bd_centers, radius);
    long long cell_bd_radius = 0;
    for (int v : g_.boundary(piece.verts)) {
      if (de[v] == kInfDist)
        throw std::logic_error("cell union certificate: cell boundary beyond reach");
      cell_bd_radius = std::max<long long>(cell_bd_radius, de[v]);
    }
    piece.cert.boundary_centers = bd_centers;
    piece.cert.boundary_a = static_cast<long long>(bd_centers.size());
    piece.cert.boundary_b = cell_bd_radius;
  };

  for (std::size_t i = 0; i < s.buildings.size(); ++i) {
    const auto& b = s.buildings[i];
    if (b.cls != BuildingClass::Fort) continue;
    Piece piece;
    piece.buildings = {static_cast<int>(i)};
    piece.is_fort = true;
    piece.verts = s.voronoi.cells[i];
    finish_piece(piece, b.cert, b.cert.boundary_centers, b.cert.boundary_b);
    fort_piece[i] = static_cast<int>(pieces.size());
    pieces.push_back(std::move(piece));
  }
  for (const auto& rec : s.communities) {
    Piece piece;
    piece.buildings = rec.members;
    VertexSet cells;
    std::vector<QuasiBoundCert> member_certs;
    for (int i : rec.members) {
      cells = set_union(cells, s.voronoi.cells[i]);
      member_certs.push_back(s.buildings[i].cert);
    }
    piece.verts = std::move(cells);
    auto base = concat_certs(g_, member_certs);
    finish_piece(piece, base, rec.boundary_centers, rec.boundary_radius);
    pieces.push_back(std::move(piece));
  }

  // Contact graph bags of at most four pieces, along the fort chain.
  std::vector<int> t0_members;
  for (std::size_t i = 0; i < s.buildings.size(); ++i)
    if (s.buildings[i].cls != BuildingClass::Castle) t0_members.push_back(static_cast<int>(i));
  auto rep = classify_rebel_structure(s, t0_members);
  if (!rep.ok)
    throw std::logic_error("cell union certificate: contact structure violated: " +
                           rep.violation);


  auto adjacent_pieces = [&](int pa, int pb) {
    for (int i : pieces[pa].buildings)
      for (int j : pieces[pb].buildings)
        if (std::find(s.adjoin[i].begin(), s.adjoin[i].end(), j) != s.adjoin[i].end())
          return true;
    return false;
  };

  std::vector<std::vector<int>> jbags;  // piece indices per bag
  std::vector<char> placed(pieces.size(), 0);

  for (std::size_t ci = 0; ci < rep.fort_chains.size(); ++ci) {
    const auto& chain = rep.fort_chains[ci];
    const bool cycle = rep.chain_cycle[ci];
    const std::size_t first_bag = jbags.size();
    for (std::size_t pos = 0; pos < chain.size(); ++pos) {
      int fp = fort_piece[chain[pos]];
      placed[fp] = 1;
      // Pendant communities adjacent only to this fort (and not to the next).
      for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
        if (pieces[pi].is_fort || placed[pi]) continue;
        bool here = adjacent_pieces(fp, static_cast<int>(pi));
        bool ahead = pos + 1 < chain.size() &&
                     adjacent_pieces(fort_piece[chain[pos + 1]], static_cast<int>(pi));
        bool behind_first = cycle && pos + 1 == chain.size() &&
                            adjacent_pieces(fort_piece[chain[0]], static_cast<int>(pi));
        if (here && !ahead && !behind_first) {
          jbags.push_back({fp, static_cast<int>(pi)});
          placed[pi] = 1;
        }
      }
      if (chain.size() == 1) jbags.push_back({fp});
      if (pos + 1 < chain.size()) {
        int fq = fort_piece[chain[pos + 1]];
        bool bridged = false;
        for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
          if (pieces[pi].is_fort || placed[pi]) continue;
          if (adjacent_pieces(fp, static_cast<int>(pi)) &&
              adjacent_pieces(fq, static_cast<int>(pi))) {
            jbags.push_back({fp, static_cast<int>(pi), fq});
            placed[pi] = 1;
            bridged = true;
          }
        }
        if (!bridged || adjacent_pieces(fp, fq)) jbags.push_back({fp, fq});
      }
    }
    if (cycle && chain.size() > 1) {
      int fa = fort_piece[chain.back()];
      int fb = fort_piece[chain.front()];
      bool bridged = false;
      for (std::size_t pi = 0; pi < pieces.size(); ++pi) {
        if (pieces[pi].is_fort || placed[pi]) continue;
        if (adjacent_pieces(fa, static_cast<int>(pi)) &&
            adjacent_pieces(fb, static_cast<int>(pi))) {
          jbags.push_back({fa, static_cast<int>(pi), fb});
          placed[pi] = 1;
          bridged = true;
        }
      }
      if (!bridged || adjacent_pieces(fa, fb)) jbags.push_back({fa, fb});
      // Close the cycle: the chain's first fort piece joins each of its bags.
      for (std::size_t t = first_bag; t < jbags.size(); ++t)
        if (std::find(jbags[t].begin(), jbags[t].end(), fb) == jbags[t].end())
          jbags[t].push_back(fb);
    }
  }
  // Isolated pieces (no fort chain, or communities touching no fort).
  for (std::size_t pi = 0; pi < pieces.size(); ++pi)
    if (!placed[pi] && !g_.boundary(pieces[pi].verts).empty())
      jbags.push_back({static_cast<int>(pi)});

  LineDecomposition outer;
  for (auto& bag : jbags) {
    VertexSet bd;
    for (int pi : bag) bd = set_union(bd, g_.boundary(pieces[pi].verts));
    outer.bags.push_back(std::move(bd));
  }

  std::vector<CompositionPiece> cpieces;
  for (auto& piece : pieces) cpieces.push_back({piece.verts, piece.cert});
  return compose_line_decompositions(g_, cpieces, outer, 4);
}

// ---------------------------------------------------------------------------
// Governments

void Pipeline::build_government_caches(const RealmState& s, Government& gov) const {
  gov.strongholds.clear();
  for (const auto& p : gov.provinces) gov.strongholds.push_back(p.framework);
  for (int r : gov.rebels) gov.strongholds.push_back(s.buildings[r].verts);
  gov.locals = voronoi_partition(g_, tb_, gov.strongholds);

  const int m = gov.stronghold_count();
  std::vector<std::set<int>> t(m);
  for (auto [u, v] : g_.edges()) {
    int ou = gov.locals.field.owner[u];
    int ov = gov.locals.field.owner[v];
    if (ou != ov) {
      t[ou].insert(ov);
      t[ov].insert(ou);
    }
  }
  gov.talk.assign(m, {});
  for (int i = 0; i < m; ++i) gov.talk[i] = std::vector<int>(t[i].begin(), t[i].end());

  // Rebel locality stays inside the realm cell.
  for (int v = 0; v < g_.vertex_count(); ++v) {
    int o = gov.locals.field.owner[v];
    int rp = o - static_cast<int>(gov.provinces.size());
    if (rp < 0) continue;
    if (s.voronoi.field.owner[v] != gov.rebels[rp])
      throw std::logic_error("government: rebel-local vertex outside the realm cell");
  }
}

Government Pipeline::primordial_government(const RealmState& s) const {
  if (s.kind != StateKind::Realm) throw GraphError("primordial_government: realm required");
  Government gov;
  for (std::size_t i = 0; i < s.buildings.size(); ++i) {
    const auto& b = s.buildings[i];
    if (b.cls == BuildingClass::Castle) {
      Province p;
      p.members = {static_cast<int>(i)};
      p.type = s.century + 1;
      p.framework = b.verts;
      p.framework_cert = b.cert;
      if (!b.model) throw std::logic_error("castle without a model");
      p.framework_model = *b.model;
      p.model_ell = b.model_ell;
      gov.provinces.push_back(std::move(p));
    } else {
      gov.rebels.push_back(static_cast<int>(i));
    }
  }
  build_government_caches(s, gov);
  return gov;
}

bool Pipeline::talks_to(const Government& gov, int a, int b) const {
  if (a == b) throw GraphError("talks_to: identical strongholds");
  return std::find(gov.talk[a].begin(), gov.talk[a].end(), b) != gov.talk[a].end();
}

namespace {

// Peripherality over a rebel set C (building indices), per the recursive
// definition: forts semiadjoining at most one other fort of C; houses whose
// maximal community within C adjoins at most one C-fort, that one peripheral.
struct PeripheralInfo {
  std::map<int, bool> peripheral;                 // per member building index
  std::vector<std::vector<int>> communities;      // maximal, within C
  std::vector<std::pair<int, int>> semiadjoins;   // fort pairs
};

PeripheralInfo peripheral_structure(const RealmState& s, const std::vector<int>& members) {
  PeripheralInfo info;
  std::vector<int> forts, houses;
  for (int i : members) {
    if (s.buildings[i].cls == BuildingClass::Fort) forts.push_back(i);
    if (s.buildings[i].cls == BuildingClass::House) houses.push_back(i);
  }
  std::map<int, std::vector<int>> hadj;
  for (int h : houses)
    for (int j : s.adjoin[h])
      if (std::find(houses.begin(), houses.end(), j) != houses.end()) hadj[h].push_back(j);
  {
    std::set<int> todo(houses.begin(), houses.end());
    while (!todo.empty()) {
      int start = *todo.begin();
      std::vector<int> comp;
      std::deque<int> queue{start};
      todo.erase(start);
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        comp.push_back(u);
        for (int w : hadj[u])
          if (todo.count(w)) {
            todo.erase(w);
            queue.push_back(w);
          }
      }
      std::sort(comp.begin(), comp.end());
      info.communities.push_back(std::move(comp));
    }
    std::sort(info.communities.begin(), info.communities.end());
  }

  auto fort_adjoins_comm = [&](int fort, const std::vector<int>& comm) {
    for (int h : comm)
      if (std::find(s.adjoin[fort].begin(), s.adjoin[fort].end(), h) != s.adjoin[fort].end())
        return true;
    return false;
  };

  std::map<int, int> sa_degree;
  for (int f : forts) sa_degree[f] = 0;
  for (std::size_t a = 0; a < forts.size(); ++a)
    for (std::size_t b = a + 1; b < forts.size(); ++b) {
      bool direct = std::find(s.adjoin[forts[a]].begin(), s.adjoin[forts[a]].end(),
                              forts[b]) != s.adjoin[forts[a]].end();
      bool via = false;
      for (const auto& comm : info.communities)
        if (fort_adjoins_comm(forts[a], comm) && fort_adjoins_comm(forts[b], comm)) via = true;
      if (direct || via) {
        info.semiadjoins.emplace_back(forts[a], forts[b]);
        ++sa_degree[forts[a]];
        ++sa_degree[forts[b]];
      }
    }
  for (int f : forts) info.peripheral[f] = sa_degree[f] <= 1;
  for (const auto& comm : info.communities) {
    std::vector<int> touching;
    for (int f : forts)
      if (fort_adjoins_comm(f, comm)) touching.push_back(f);
    bool per = touching.empty() || (touching.size() == 1 && info.peripheral[touching[0]]);
    for (int h : comm) info.peripheral[h] = per;
  }
  return info;
}

}  // namespace

StateCheck Pipeline::verify_government(const RealmState& s, const Government& gov) const {
  const int k = s.century;
  const long long alpha = sched_.alpha[k];
  const long long beta = sched_.beta[k];
  const int ell = sched_.ell;

  std::vector<char> in_province(s.buildings.size(), 0);
  for (const auto& p : gov.provinces)
    for (int m : p.members) {
      if (in_province[m]) return {false, "building in two provinces"};
      in_province[m] = 1;
    }
  for (int r : gov.rebels)
    if (in_province[r]) return {false, "rebel listed inside a province"};
  for (std::size_t i = 0; i < s.buildings.size(); ++i) {
    bool rebel = std::find(gov.rebels.begin(), gov.rebels.end(), static_cast<int>(i)) !=
                 gov.rebels.end();
    if (in_province[i] == rebel) return {false, "province/rebel partition broken"};
    if (s.buildings[i].cls == BuildingClass::Castle && !in_province[i])
      return {false, "castle outside every province"};
  }

  for (const auto& p : gov.provinces) {
    if (p.type < k + 1 || p.type > ell - 1) return {false, "province type out of range"};
    if (!g_.is_connected_induced(p.framework)) return {false, "framework disconnected"};
    VertexSet mverts;
    long long castles = 0;
    for (int m : p.members) {
      mverts = set_union(mverts, s.buildings[m].verts);
      if (s.buildings[m].cls == BuildingClass::Castle) ++castles;
    }
    if (!is_subset(mverts, p.framework)) return {false, "framework misses a member"};

    // Reachability radius d0*(type-k-1) inside the framework.
    auto allowed = make_mask(g_.vertex_count(), p.framework);
    std::vector<int> dist(g_.vertex_count(), kInfDist);
    std::deque<int> queue;
    for (int v : mverts) {
      dist[v] = 0;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int w : g_.neighbors(u))
        if (allowed[w] && dist[w] == kInfDist) {
          dist[w] = dist[u] + 1;
          queue.push_back(w);
        }
    }
    long long lim = sched_.d0 * (p.type - k - 1);
    for (int v : p.framework)
      if (dist[v] == kInfDist || dist[v] > lim)
        return {false, "framework vertex beyond d0*(t-k-1) of the members"};

    // Witness model of H_type inside the framework.
    if (p.model_ell != p.type) return {false, "framework model at the wrong depth"};
    auto mc = verify_superfat(g_, build_pattern_tree(p.type), p.framework_model);
    if (!mc) return {false, "framework model invalid: " + mc.violation};
    if (!is_subset(p.framework_model.all_vertices(), p.framework))
      return {false, "framework model escapes the framework"};

    // Smallness bound.
    long long sa = 7 * (ell - k) * 1;
    for (int e = 0; e < ell - k; ++e) sa *= 3;
    long long sb = beta + 2 * (ell - k - 1) * sched_.d0;
    auto cc = cert_meets(g_, p.framework_cert, sa * alpha, sb);
    if (!cc) return {false, "framework certificate fails smallness: " + cc.violation};
    if (p.framework_cert.subject != p.framework)
      return {false, "framework certificate covers the wrong set"};

    // Province structure counts.
    PeripheralInfo info = peripheral_structure(s, p.members);
    long long pow3tk = 1;
    for (int e = 0; e < p.type - k; ++e) pow3tk *= 3;
    long long per_forts = 0;
    for (int m : p.members)
      if (s.buildings[m].cls == BuildingClass::Fort && info.peripheral[m]) ++per_forts;
    if (per_forts > pow3tk - 1) return {false, "too many peripheral forts in a province"};
    long long per_comms = 0;
    for (const auto& comm : info.communities) {
      bool any = false;
      for (int h : comm) any = any || info.peripheral[h];
      if (any) ++per_comms;
    }
    if (per_comms > pow3tk - 2) return {false, "too many peripheral house communities"};
    if (castles != pow3tk / 3) return {false, "wrong castle count in a province"};
  }

  // Separations between frameworks and towards rebels.
  for (std::size_t i = 0; i < gov.provinces.size(); ++i) {
    long long thr = sched_.delta_at(k, std::max(0, 2 * k));
    auto di = g_.multi_source_distances(gov.provinces[i].framework,
                                        clamp_depth(thr + 1, g_.vertex_count()));
    for (std::size_t j = i + 1; j < gov.provinces.size(); ++j) {
      int idx = gov.provinces[i].type + gov.provinces[j].type;
      if (min_dist_to(di, gov.provinces[j].framework) <= sched_.delta_at(k, idx))
        return {false, "frameworks too close"};
    }
    for (int r : gov.rebels) {
      int idx = gov.provinces[i].type + s.buildings[r].rank(k);
      if (min_dist_to(di, s.buildings[r].verts) <= sched_.delta_at(k, idx))
        return {false, "framework too close to a rebel"};
    }
  }
  return {};
}

bool Pipeline::dangerous(const Government& gov, const std::vector<int>& rebel_strongholds,
                         int* j_out, std::vector<int>* provinces_out) const {
  const int np = static_cast<int>(gov.provinces.size());
  for (int j = 0; j <= sched_.ell; ++j) {
    std::vector<int> hits;
    for (int p = 0; p < np; ++p) {
      if (gov.provinces[p].type != j) continue;
      for (int r : rebel_strongholds)
        if (talks_to(gov, r, p)) {
          hits.push_back(p);
          break;
        }
    }
    if (hits.size() >= 3) {
      if (j_out) *j_out = j;
      if (provinces_out) *provinces_out = {hits[0], hits[1], hits[2]};
      return true;
    }
  }
  return false;
}

std::optional<Cabal> Pipeline::find_cabal(const RealmState& s, const Government& gov) const {
  const int np = static_cast<int>(gov.provinces.size());
  const int ns = gov.stronghold_count();

  // Maximal in-communication rebel sets: talk components over rebels.
  std::vector<int> rebel_idx;
  for (int i = np; i < ns; ++i) rebel_idx.push_back(i);
  std::map<int, std::vector<int>> radj;
  for (int i : rebel_idx)
    for (int j : gov.talk[i])
      if (j >= np) radj[i].push_back(j);
  auto comps = component_split(rebel_idx, radj);

  // Networks: talk components over rebel houses.
  std::vector<int> house_idx;
  for (int i = np; i < ns; ++i)
    if (s.buildings[gov.rebels[i - np]].cls == BuildingClass::House) house_idx.push_back(i);
  std::map<int, std::vector<int>> hadj;
  for (int i : house_idx)
    for (int j : gov.talk[i])
      if (std::find(house_idx.begin(), house_idx.end(), j) != house_idx.end())
        hadj[i].push_back(j);
  auto nets = component_split(house_idx, hadj);

  auto members_as_buildings = [&](const std::vector<int>& strongholds) {
    std::vector<int> out;
    for (int i : strongholds) out.push_back(gov.rebels[i - np]);
    std::sort(out.begin(), out.end());
    return out;
  };

  auto verify_cabal = [&](const Cabal& cab) -> StateCheck {
    std::set<int> cset(cab.members.begin(), cab.members.end());
    // In communication.
    {
      std::set<int> seen;
      std::deque<int> queue{cab.members.front()};
      seen.insert(cab.members.front());
      while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int w : gov.talk[u])
          if (cset.count(w) && !seen.count(w)) {
            seen.insert(w);
            queue.push_back(w);
          }
      }
      if (seen.size() != cset.size()) return {false, "cabal not in communication"};
    }
    // Organized: any network meeting the cabal's houses lies inside it.
    for (const auto& net : nets) {
      bool meets = false, inside = true;
      for (int i : net) {
        if (cset.count(i)) meets = true;
        else inside = false;
      }
      if (meets && !inside) return {false, "cabal not organized"};
    }
    if (cab.leaders.size() > 2) return {false, "more than two leaders"};
    for (int l : cab.leaders) {
      if (!cset.count(l)) return {false, "leader outside the cabal"};
      if (s.buildings[gov.rebels[l - np]].cls != BuildingClass::Fort)
        return {false, "leader is not a fort"};
    }
    if (cab.leading_networks.size() > 3) return {false, "more than three leading networks"};
    std::set<int> lead_members(cab.leaders.begin(), cab.leaders.end());
    for (const auto& net : cab.leading_networks) {
      if (std::find(nets.begin(), nets.end(), net) == nets.end())
        return {false, "leading set is not a network"};
      for (int i : net) {
        if (!cset.count(i)) return {false, "leading network outside the cabal"};
        lead_members.insert(i);
      }
    }
    // Peripheral members are leaders or belong to leading networks.
    auto info = peripheral_structure(s, members_as_buildings(cab.members));
    for (int i : cab.members) {
      int b = gov.rebels[i - np];
      if (info.peripheral.count(b) && info.peripheral[b] && !lead_members.count(i))
        return {false, "peripheral member neither leader nor leading"};
    }
    // Talking to an outside rebel forces leadership.
    for (int i : cab.members)
      for (int w : gov.talk[i])
        if (w >= np && !cset.count(w) && !lead_members.count(i))
          return {false, "member talks outside without leadership"};
    // Dangerous with the recorded provinces.
    if (cab.provinces.size() != 3) return {false, "cabal needs three provinces"};
    for (int p : cab.provinces) {
      if (gov.provinces[p].type != cab.j) return {false, "province type mismatch"};
      bool talked = false;
      for (int i : cab.members)
        if (talks_to(gov, i, p)) talked = true;
      if (!talked) return {false, "province not talked to"};
    }
    // Last bullet: singleton, a network, or at most four per type.
    bool is_net = false;
    std::vector<int> sorted_members(cab.members.begin(), cab.members.end());
    std::sort(sorted_members.begin(), sorted_members.end());
    for (const auto& net : nets)
      if (net == sorted_members) is_net = true;
    if (cab.members.size() != 1 && !is_net) {
      for (int j = 0; j <= 2 * sched_.ell; ++j) {
        int cnt = 0;
        for (int p = 0; p < np; ++p) {
          if (gov.provinces[p].type != j) continue;
          for (int i : cab.members)
            if (talks_to(gov, i, p)) {
              ++cnt;
              break;
            }
        }
        if (cnt > 4) return {false, "talks to five provinces of one type"};
      }
    }
    return {};
  };

  for (const auto& comp : comps) {
    int j = 0;
    std::vector<int> provs;
    if (!dangerous(gov, comp, &j, &provs)) continue;

    // A dangerous network is its own cabal.
    for (const auto& net : nets) {
      if (!std::includes(comp.begin(), comp.end(), net.begin(), net.end())) continue;
      int nj = 0;
      std::vector<int> nprovs;
      if (!dangerous(gov, net, &nj, &nprovs)) continue;
      Cabal cab;
      cab.members = net;
      cab.leading_networks = {net};
      cab.j = nj;
      cab.provinces = nprovs;
      auto chk = verify_cabal(cab);
      if (!chk) throw std::logic_error("dangerous network fails cabal bullets: " + chk.bullet);
      return cab;
    }

    // Fort window recipe.
    auto rep = classify_rebel_structure(s, members_as_buildings(comp));
    if (!rep.ok)
      throw std::logic_error("find_cabal: contact structure violated: " + rep.violation);
    if (rep.fort_chains.size() > 1)
      throw std::logic_error("find_cabal: talk-connected set split into several chains");
    std::vector<int> chain_orders =
        rep.fort_chains.empty() ? std::vector<int>{} : rep.fort_chains.front();
    std::vector<int> fort_sh;  // stronghold indices along the chain
    for (int b : chain_orders) {
      int pos = static_cast<int>(std::find(gov.rebels.begin(), gov.rebels.end(), b) -
                                 gov.rebels.begin());
      fort_sh.push_back(np + pos);
    }
    if (fort_sh.empty()) continue;

    auto nets_talking_to = [&](const std::vector<int>& fort_list) {
      std::vector<std::vector<int>> out;
      for (const auto& net : nets) {
        if (!std::includes(comp.begin(), comp.end(), net.begin(), net.end())) continue;
        bool talks = false;
        for (int i : net)
          for (int f : fort_list)
            if (talks_to(gov, i, f)) talks = true;
        if (talks) out.push_back(net);
      }
      return out;
    };

    const int nf = static_cast<int>(fort_sh.size());
    for (int len = 0; len < nf; ++len) {
      for (int i1 = 0; i1 + len < nf; ++i1) {
        int i2 = i1 + len;
        std::vector<int> window(fort_sh.begin() + i1, fort_sh.begin() + i2 + 1);
        std::vector<int> cset = window;
        for (const auto& net : nets_talking_to(window))
          cset.insert(cset.end(), net.begin(), net.end());
        std::sort(cset.begin(), cset.end());
        int wj = 0;
        std::vector<int> wprovs;
        if (!dangerous(gov, cset, &wj, &wprovs)) continue;

        std::vector<int> dset = window;
        std::vector<std::vector<int>> dnets;
        if (len >= 2)
          dnets = nets_talking_to(std::vector<int>(window.begin() + 1, window.end() - 1));
        for (const auto& net : dnets) dset.insert(dset.end(), net.begin(), net.end());
        std::sort(dset.begin(), dset.end());

        Cabal cab;
        cab.members = dset;
        cab.j = wj;
        cab.provinces = wprovs;
        cab.leaders = {fort_sh[i1]};
        if (i2 != i1) cab.leaders.push_back(fort_sh[i2]);
        cab.leading_networks = dnets.empty() ? std::vector<std::vector<int>>{} : dnets;
        // Add at most three networks so every chosen province is talked to.
        std::vector<std::vector<int>> added;
        for (int p : cab.provinces) {
          bool talked = false;
          for (int i : cab.members)
            if (talks_to(gov, i, p)) talked = true;
          if (talked) continue;
          for (const auto& net : nets_talking_to(window)) {
            bool net_talks = false;
            for (int i : net)
              if (talks_to(gov, i, p)) net_talks = true;
            if (!net_talks) continue;
            cab.members.insert(cab.members.end(), net.begin(), net.end());
            added.push_back(net);
            break;
          }
        }
        std::sort(cab.members.begin(), cab.members.end());
        cab.members.erase(std::unique(cab.members.begin(), cab.members.end()),
                          cab.members.end());
        cab.leading_networks = added;
        auto chk = verify_cabal(cab);
        if (!chk)
          throw std::logic_error("window recipe fails cabal bullets: " + chk.bullet);
        return cab;
      }
    }
  }
  return std::nullopt;
}

std::variant<Government, Witness> Pipeline::apply_revolution(const RealmState& s,
                                                             const Government& gov,
                                                             const Cabal& cabal) {
  const int k = s.century;
  const int j = cabal.j;

  VertexSet region;
  for (int i : cabal.members) region = set_union(region, gov.locals.cells[i]);
  for (int p : cabal.provinces) region = set_union(region, gov.locals.cells[p]);
  if (!g_.is_connected_induced(region))
    throw std::logic_error("apply_revolution: local union disconnected");

  std::array<const FatModel*, 3> models{};
  for (int i = 0; i < 3; ++i) {
    const auto& p = gov.provinces[cabal.provinces[i]];
    if (p.model_ell != j) throw std::logic_error("apply_revolution: model depth mismatch");
    models[i] = &p.framework_model;
  }
  auto model = build_claw_model(region, models, j);

  if (j + 1 == sched_.ell) {
    log(k, "revolution", "witness H_" + std::to_string(sched_.ell) + " via cabal of " +
                             std::to_string(cabal.members.size()) + " rebels");
    return Witness{sched_.ell, std::move(model)};
  }

  // Merged province of type j+1 with framework = the local union.
  Province merged;
  merged.type = j + 1;
  merged.framework = region;
  merged.framework_model = std::move(model);
  merged.model_ell = j + 1;
  for (int p : cabal.provinces) {
    const auto& old = gov.provinces[p];
    merged.members.insert(merged.members.end(), old.members.begin(), old.members.end());
  }
  for (int i : cabal.members) merged.members.push_back(gov.rebels[i - static_cast<int>(gov.provinces.size())]);
  std::sort(merged.members.begin(), merged.members.end());

  // Framework certificate: rebel-local cells carry the cell-union cert of
  // the realm; castles keep their own; the remainder is pushed onto the
  // combined boundary centers.
  VertexSet wset;
  for (int i : cabal.members) wset = set_union(wset, gov.locals.cells[i]);
  auto s_cert = build_cell_union_cert(s);
  auto w_cert = restrict_cert(s_cert, wset);

  std::vector<QuasiBoundCert> parts{w_cert};
  VertexSet centers = s_cert.boundary_centers;
  long long base_radius = 0;
  for (int i : cabal.members) {
    int b = gov.rebels[i - static_cast<int>(gov.provinces.size())];
    centers = set_union(centers, s.buildings[b].cert.boundary_centers);
    base_radius = std::max(base_radius, s.buildings[b].cert.boundary_b);
  }
  for (int p : cabal.provinces)
    for (int m : gov.provinces[p].members) {
      const auto& b = s.buildings[m];
      if (b.cls == BuildingClass::Castle) parts.push_back(b.cert);
      centers = set_union(centers, b.cert.boundary_centers);
      base_radius = std::max(base_radius, b.cert.boundary_b);
    }
  auto base = concat_certs(g_, parts);
  VertexSet rest = set_difference(region, base.subject);
  const long long claim_b = sched_.beta[k] + 2 * (sched_.ell - k - 1) * sched_.d0;
  auto dc = g_.multi_source_distances(centers, clamp_depth(claim_b, g_.vertex_count()));
  long long radius = 0;
  bool reachable = true;
  for (int v : rest) {
    if (dc[v] == kInfDist) reachable = false;
    else radius = std::max<long long>(radius, dc[v]);
  }
  QuasiBoundCert fcert;
  if (reachable) {
    fcert = pad_cert_with_set(g_, base, rest, centers, radius);
    long long bd_radius = 0;
    for (int v : g_.boundary(region)) {
      if (dc[v] == kInfDist) reachable = false;
      else bd_radius = std::max<long long>(bd_radius, dc[v]);
    }
    fcert.boundary_centers = centers;
    fcert.boundary_a = static_cast<long long>(centers.size());
    fcert.boundary_b = std::max(base_radius, bd_radius);
  }
  long long small_a = 7 * (sched_.ell - k);
  for (int e = 0; e < sched_.ell - k; ++e) small_a *= 3;
  small_a *= sched_.alpha[k];
  if (!reachable || !cert_meets(g_, fcert, small_a, claim_b)) {
    // Greedy fallback at the smallness claim.
    auto bags_found = find_quasi_center(g_, region, small_a, claim_b);
    auto bd_found = find_quasi_center(g_, g_.boundary(region), small_a, claim_b);
    if (!bags_found || !bd_found)
      throw std::logic_error("apply_revolution: framework certificate not assemblable");
    fcert = QuasiBoundCert{};
    fcert.subject = region;
    fcert.decomp.bags = {region};
    fcert.bag_centers = {bags_found->center.centers};
    fcert.a = small_a;
    fcert.b = claim_b;
    fcert.boundary_centers = bd_found->center.centers;
    fcert.boundary_a = small_a;
    fcert.boundary_b = claim_b;
    auto cc = cert_meets(g_, fcert, small_a, claim_b);
    if (!cc)
      throw std::logic_error("apply_revolution: fallback certificate fails: " + cc.violation);
  }
  merged.framework_cert = std::move(fcert);

  Government next;
  std::set<int> drop(cabal.provinces.begin(), cabal.provinces.end());
  for (std::size_t p = 0; p < gov.provinces.size(); ++p)
    if (!drop.count(static_cast<int>(p))) next.provinces.push_back(gov.provinces[p]);
  next.provinces.push_back(std::move(merged));
  std::set<int> cabal_buildings;
  for (int i : cabal.members)
    cabal_buildings.insert(gov.rebels[i - static_cast<int>(gov.provinces.size())]);
  for (int r : gov.rebels)
    if (!cabal_buildings.count(r)) next.rebels.push_back(r);
  build_government_caches(s, next);
  auto chk = verify_government(s, next);
  if (!chk) throw std::logic_error("apply_revolution violates: " + chk.bullet);
  log(k, "revolution", "merged three type-" + std::to_string(j) + " provinces");
  return next;
}

std::variant<Government, Witness> Pipeline::stabilize_government(const RealmState& s,
                                                                 Government gov) {
  while (true) {
    auto cab = find_cabal(s, gov);
    if (!cab) return gov;
    auto res = apply_revolution(s, gov, *cab);
    if (std::holds_alternative<Witness>(res)) return std::get<Witness>(std::move(res));
    gov = std::get<Government>(std::move(res));
  }
}

// ---------------------------------------------------------------------------
// Century advance and extraction

namespace {

// H_to model obtained from an H_from model by keeping the top of the tree;
// both canonical numberings truncate consistently (children stay ascending).
FatModel restrict_model_depth(const FatModel& m, int from_ell, int to_ell) {
  if (from_ell == to_ell) return m;
  auto from = build_pattern_tree(from_ell);
  auto to = build_pattern_tree(to_ell);
  FatModel out;
  out.c = m.c;
  out.vertex_parts.assign(to.vertex_count(), {});
  out.edge_parts.assign(std::max(0, to.vertex_count() - 1), {});
  std::vector<int> map_to_from(to.vertex_count(), -1);
  map_to_from[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int nv = queue.front();
    queue.pop_front();
    int ov = map_to_from[nv];
    out.vertex_parts[nv] = m.vertex_parts[ov];
    const auto& nc = to.children[nv];
    const auto& oc = from.children[ov];
    if (!nc.empty() && nc.size() != oc.size())
      throw std::logic_error("restrict_model_depth: fanout mismatch");
    for (std::size_t i = 0; i < nc.size(); ++i) {
      map_to_from[nc[i]] = oc[i];
      int ne = to.tree.edge_index(nv, nc[i]);
      int oe = from.tree.edge_index(ov, oc[i]);
      out.edge_parts[ne] = m.edge_parts[oe];
      queue.push_back(nc[i]);
    }
  }
  return out;
}

}  // namespace

RealmState Pipeline::advance_century(const RealmState& s, const Government& gov) {
  const int k = s.century;
  if (k + 1 > sched_.ell) throw GraphError("advance_century: beyond the last century");

  RealmState next;
  next.century = k + 1;
  next.kind = StateKind::Society;
  for (int r : gov.rebels) {
    Building house;
    house.verts = s.buildings[r].verts;
    house.cls = BuildingClass::House;
    house.cert = s.buildings[r].cert;
    next.buildings.push_back(std::move(house));
  }
  for (const auto& p : gov.provinces) {
    Building fort;
    fort.verts = p.framework;
    fort.cls = BuildingClass::Fort;
    fort.cert = p.framework_cert;
    fort.model = restrict_model_depth(p.framework_model, p.type, k + 1);
    fort.model_ell = k + 1;
    next.buildings.push_back(std::move(fort));
  }
  refresh_state(next, true);

  // Fifth-bullet certificates: restrict the realm's cell-union certificate
  // to each maximal house community's cell union, with the community cover
  // pushed by d0 for the boundary.
  auto s_cert = build_cell_union_cert(s);
  const long long alpha = sched_.alpha[k + 1];
  const long long beta = sched_.beta[k + 1];
  for (auto& rec : next.communities) {
    VertexSet cells;
    for (int i : rec.members) cells = set_union(cells, next.voronoi.cells[i]);
    auto cell_cert = restrict_cert(s_cert, cells);

    auto bd = g_.boundary(cells);
    bool done = false;
    if (!rec.boundary_centers.empty() || bd.empty()) {
      long long lim = rec.boundary_radius + sched_.d0;
      auto dc = g_.multi_source_distances(rec.boundary_centers,
                                          clamp_depth(lim, g_.vertex_count()));
      long long radius = 0;
      bool ok = true;
      for (int v : bd) {
        if (dc[v] == kInfDist) ok = false;
        else radius = std::max<long long>(radius, dc[v]);
      }
      if (ok && static_cast<long long>(rec.boundary_centers.size()) <= alpha &&
          radius <= beta - sched_.d0) {
        cell_cert.boundary_centers = rec.boundary_centers;
        cell_cert.boundary_a = static_cast<long long>(rec.boundary_centers.size());
        cell_cert.boundary_b = radius;
        done = true;
      }
    }
    if (!done) {
      auto found = find_quasi_center(g_, bd, alpha, beta - sched_.d0);
      if (!found)
        throw std::logic_error("advance_century: community cell boundary cover not found");
      cell_cert.boundary_centers = found->center.centers;
      cell_cert.boundary_a = alpha;
      cell_cert.boundary_b = beta - sched_.d0;
    }
    auto cc = cert_meets(g_, cell_cert, alpha, beta - sched_.d0);
    if (!cc)
      throw std::logic_error("advance_century: community cell certificate fails: " +
                             cc.violation);
    rec.cell_cert = std::move(cell_cert);
  }

  auto chk = verify_society(next);
  if (!chk) throw std::logic_error("advance_century violates: " + chk.bullet);
  log(k, "advance_century",
      "forts=" + std::to_string(gov.provinces.size()) +
          " houses=" + std::to_string(gov.rebels.size()));
  return next;
}

QuasiBoundCert Pipeline::extract_certificate(const RealmState& s) {
  if (s.century != sched_.ell)
    throw GraphError("extract_certificate: needs the final century");
  for (const auto& b : s.buildings)
    if (b.cls != BuildingClass::House)
      throw GraphError("extract_certificate: a non-house member remains (witness path)");
  if (s.communities.size() != 1)
    throw std::logic_error("extract_certificate: expected one maximal community");
  const auto& rec = s.communities.front();
  if (!rec.cell_cert) throw std::logic_error("extract_certificate: missing cell certificate");
  QuasiBoundCert cert = *rec.cell_cert;
  VertexSet all(g_.vertex_count());
  for (int v = 0; v < g_.vertex_count(); ++v) all[v] = v;
  if (cert.subject != all)
    throw std::logic_error("extract_certificate: certificate misses vertices");
  auto cc = cert_meets(g_, cert, sched_.final_a(), sched_.final_b());
  if (!cc) throw std::logic_error("extract_certificate fails: " + cc.violation);
  cert.a = sched_.final_a();
  cert.b = sched_.final_b();
  cert.boundary_a = sched_.final_a();
  cert.boundary_b = sched_.final_b();
  log(sched_.ell, "extract_certificate",
      "global certificate at (" + std::to_string(cert.a) + "," + std::to_string(cert.b) + ")");
  return cert;
}


PipelineOutcome Pipeline::run() {
  audit_.clear();
  PipelineOutcome out;

  auto state = initial_society();
  for (int k = 0; k < sched_.ell; ++k) {
    state = society_to_realm(std::move(state));
    while (true) {
      auto move = find_castle_move(state);
      if (!move) break;
      auto res = apply_castle_move(state, *move);
      if (std::holds_alternative<Witness>(res)) {
        out.is_witness = true;
        out.witness = std::get<Witness>(std::move(res));
        out.audit = audit_;
        return out;
      }
      state = std::get<RealmState>(std::move(res));
    }

    auto gov = primordial_government(state);
    auto gc = verify_government(state, gov);
    if (!gc) throw std::logic_error("primordial government violates: " + gc.bullet);
    log(k, "primordial_government",
        "provinces=" + std::to_string(gov.provinces.size()) +
            " rebels=" + std::to_string(gov.rebels.size()));

    auto stab = stabilize_government(state, std::move(gov));
    if (std::holds_alternative<Witness>(stab)) {
      out.is_witness = true;
      out.witness = std::get<Witness>(std::move(stab));
      out.audit = audit_;
      return out;
    }
    log(k, "stable_government", "no cabal remains");
    state = advance_century(state, std::get<Government>(stab));
  }

  out.certificate = extract_certificate(state);
  out.audit = audit_;
  return out;
}

}  // namespace cwl
