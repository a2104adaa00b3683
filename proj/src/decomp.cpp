#include "cwl/decomp.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

namespace cwl {

DecompCheck verify_line_decomposition(const Graph& g, const VertexSet& subject,
                                      const LineDecomposition& d) {
  const int n = g.vertex_count();
  auto subject_mask = make_mask(n, subject);
  for (const auto& bag : d.bags)
    for (int v : bag)
      if (v < 0 || v >= n || !subject_mask[v]) return {false, "bag vertex outside subject"};

  // Coverage.
  std::vector<char> covered(n, 0);
  for (const auto& bag : d.bags)
    for (int v : bag) covered[v] = 1;
  for (int v : subject)
    if (!covered[v]) return {false, "uncovered vertex " + std::to_string(v)};

  // Interval property: bag positions per vertex are contiguous.
  std::vector<int> first(n, -1), last(n, -1);
  for (std::size_t t = 0; t < d.bags.size(); ++t) {
    for (int v : d.bags[t]) {
      if (first[v] == -1) first[v] = static_cast<int>(t);
      last[v] = static_cast<int>(t);
    }
  }
  std::vector<std::vector<char>> in_bag(d.bags.size());
  for (std::size_t t = 0; t < d.bags.size(); ++t) {
    in_bag[t].assign(n, 0);
    for (int v : d.bags[t]) in_bag[t][v] = 1;
  }
  for (int v : subject) {
    for (int t = first[v]; t <= last[v]; ++t)
      if (!in_bag[t][v])
        return {false, "interval axiom violated at vertex " + std::to_string(v)};
  }

  // Every induced edge inside some bag: since each vertex occupies an
  // interval of positions, an edge is covered iff the intervals intersect.
  for (auto [u, v] : g.edges()) {
    if (!subject_mask[u] || !subject_mask[v]) continue;
    if (first[u] == -1 || first[v] == -1) return {false, "uncovered edge endpoint"};
    if (std::max(first[u], first[v]) > std::min(last[u], last[v]))
      return {false,
              "uncovered edge (" + std::to_string(u) + "," + std::to_string(v) + ")"};
  }
  return {};
}

int decomposition_width(const LineDecomposition& d) {
  if (d.bags.empty()) throw GraphError("decomposition_width: empty bag list");
  std::size_t mx = 0;
  for (const auto& bag : d.bags) mx = std::max(mx, bag.size());
  return static_cast<int>(mx) - 1;
}

PathwidthResult exact_pathwidth(const Graph& g, int cap) {
  const int n = g.vertex_count();
  if (n > cap)
    throw GraphError("exact_pathwidth: " + std::to_string(n) + " vertices exceeds cap " +
                     std::to_string(cap));
  if (n == 0) throw GraphError("exact_pathwidth: empty graph");

  std::vector<std::uint32_t> nb(n, 0);
  for (auto [u, v] : g.edges()) {
    nb[u] |= 1u << v;
    nb[v] |= 1u << u;
  }
  const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;

  // cost(S) = number of vertices in S with a neighbor outside S.
  std::vector<std::uint8_t> cost(std::size_t(1) << n, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int c = 0;
    for (std::uint32_t rest = s; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      if (nb[v] & ~s & full) ++c;
    }
    cost[s] = static_cast<std::uint8_t>(c);
  }

  // f(S): minimal over orderings of S of the max prefix boundary.
  std::vector<std::uint8_t> f(std::size_t(1) << n, 0);
  std::vector<std::int8_t> pick(std::size_t(1) << n, -1);
  for (std::uint32_t s = 1; s <= full; ++s) {
    int best = n + 1;
    int best_v = -1;
    for (std::uint32_t rest = s; rest;) {
      int v = std::countr_zero(rest);
      rest &= rest - 1;
      int val = std::max<int>(f[s & ~(1u << v)], cost[s]);
      if (val < best) {
        best = val;
        best_v = v;
      }
    }
    f[s] = static_cast<std::uint8_t>(best);
    pick[s] = static_cast<std::int8_t>(best_v);
  }

  // Recover the ordering (pick[S] is placed last within S).
  std::vector<int> order(n);
  std::uint32_t s = full;
  for (int i = n - 1; i >= 0; --i) {
    order[i] = pick[s];
    s &= ~(1u << order[i]);
  }

  std::vector<int> pos(n);
  for (int i = 0; i < n; ++i) pos[order[i]] = i;

  PathwidthResult res;
  res.width = f[full];
  for (int i = 0; i < n; ++i) {
    VertexSet bag{order[i]};
    for (int j = 0; j < i; ++j) {
      int u = order[j];
      bool later = false;
      for (int w : g.neighbors(u))
        if (pos[w] >= i) later = true;
      if (later) bag.push_back(u);
    }
    res.decomp.bags.push_back(make_vertex_set(std::move(bag)));
  }

  VertexSet all(n);
  for (int v = 0; v < n; ++v) all[v] = v;
  auto chk = verify_line_decomposition(g, all, res.decomp);
  if (!chk) throw std::logic_error("exact_pathwidth produced invalid decomposition: " + chk.violation);
  if (decomposition_width(res.decomp) != res.width)
    throw std::logic_error("exact_pathwidth width mismatch");
  return res;
}

bool verify_quasi_size(const Graph& g, const VertexSet& xs, const QuasiCenter& qc) {
  if (static_cast<long long>(qc.centers.size()) > qc.k) return false;
  if (xs.empty()) return true;
  if (qc.centers.empty()) return false;
  auto dist = g.multi_source_distances(qc.centers, static_cast<int>(std::min<long long>(qc.r, g.vertex_count())));
  for (int x : xs)
    if (dist[x] == kInfDist || dist[x] > qc.r) return false;
  return true;
}

std::optional<QuasiCenterSearch> find_quasi_center(const Graph& g, const VertexSet& xs,
                                                   long long k, long long r) {
  if (k < 0 || r < 0) return std::nullopt;
  if (xs.empty()) return QuasiCenterSearch{QuasiCenter{{}, k, r}, true};
  if (k == 0) return std::nullopt;

  const int n = g.vertex_count();
  const int ri = static_cast<int>(std::min<long long>(r, n));
  VertexSet pool = g.ball(xs, ri);

  auto covers = [&](int c) {
    auto dist = g.multi_source_distances({c}, ri);
    std::vector<char> cov(xs.size(), 0);
    for (std::size_t i = 0; i < xs.size(); ++i)
      cov[i] = dist[xs[i]] != kInfDist && dist[xs[i]] <= r;
    return cov;
  };

  // Exact subset search over small pools.
  if (pool.size() <= 12) {
    std::vector<std::vector<char>> cov;
    cov.reserve(pool.size());
    for (int c : pool) cov.push_back(covers(c));
    const std::uint32_t lim = 1u << pool.size();
    std::uint32_t best = 0;
    int best_pc = static_cast<int>(k) + 1;
    for (std::uint32_t s = 1; s < lim; ++s) {
      int pc = std::popcount(s);
      if (pc > k || pc >= best_pc) continue;
      bool all = true;
      for (std::size_t i = 0; all && i < xs.size(); ++i) {
        bool got = false;
        for (std::uint32_t rest = s; rest && !got;) {
          int j = std::countr_zero(rest);
          rest &= rest - 1;
          got = cov[j][i];
        }
        all = got;
      }
      if (all) {
        best = s;
        best_pc = pc;
      }
    }
    if (best_pc <= k) {
      VertexSet centers;
      for (std::uint32_t rest = best; rest;) {
        int j = std::countr_zero(rest);
        rest &= rest - 1;
        centers.push_back(pool[j]);
      }
      return QuasiCenterSearch{QuasiCenter{make_vertex_set(std::move(centers)), k, r}, true};
    }
    return std::nullopt;
  }

  // Greedy set cover: per round, accumulate per-candidate coverage counts by
  // one truncated BFS per uncovered target, then take the best candidate.
  std::vector<char> uncovered(xs.size(), 1);
  VertexSet centers;
  const long long scan_budget = 200000000LL;
  while (true) {
    std::size_t remaining = 0;
    for (char u : uncovered) remaining += u;
    if (remaining == 0) break;
    if (static_cast<long long>(centers.size()) >= k) return std::nullopt;

    int pick = -1;
    if (static_cast<long long>(remaining) * n <= scan_budget) {
      std::vector<int> count(n, 0);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (!uncovered[i]) continue;
        auto dist = g.multi_source_distances({xs[i]}, ri);
        for (int v = 0; v < n; ++v)
          if (dist[v] != kInfDist && dist[v] <= r) ++count[v];
      }
      for (int v = 0; v < n; ++v)
        if (pick == -1 || count[v] > count[pick]) pick = v;
      if (count[pick] == 0) return std::nullopt;
    } else {
      for (std::size_t i = 0; i < xs.size(); ++i)
        if (uncovered[i]) {
          pick = xs[i];
          break;
        }
    }
    centers.push_back(pick);
    auto cov = covers(pick);
    for (std::size_t i = 0; i < xs.size(); ++i)
      if (cov[i]) uncovered[i] = 0;
  }
  QuasiCenter qc{make_vertex_set(std::move(centers)), k, r};
  if (!verify_quasi_size(g, xs, qc)) return std::nullopt;
  return QuasiCenterSearch{std::move(qc), false};
}

DecompCheck verify_quasi_bound_cert(const Graph& g, const QuasiBoundCert& cert) {
  if (cert.decomp.bags.size() != cert.bag_centers.size())
    return {false, "bag/center count mismatch"};
  auto chk = verify_line_decomposition(g, cert.subject, cert.decomp);
  if (!chk) return chk;
  for (std::size_t t = 0; t < cert.decomp.bags.size(); ++t) {
    QuasiCenter qc{cert.bag_centers[t], cert.a, cert.b};
    if (!verify_quasi_size(g, cert.decomp.bags[t], qc))
      return {false, "quasi-size violated at bag " + std::to_string(t)};
  }
  QuasiCenter bqc{cert.boundary_centers, cert.boundary_a, cert.boundary_b};
  if (!verify_quasi_size(g, g.boundary(cert.subject), bqc))
    return {false, "quasi-size violated at subject boundary"};
  return {};
}

DecompCheck cert_meets(const Graph& g, const QuasiBoundCert& cert, long long a_limit,
                       long long b_limit) {
  if (cert.a > a_limit || cert.b > b_limit)
    return {false, "claimed line-width parameters exceed limit"};
  if (cert.boundary_a > a_limit || cert.boundary_b > b_limit)
    return {false, "claimed boundary parameters exceed limit"};
  return verify_quasi_bound_cert(g, cert);
}

QuasiBoundCert trivial_cert(const Graph& g, const VertexSet& subject, long long a,
                            long long b) {
  QuasiBoundCert cert;
  cert.subject = subject;
  cert.a = a;
  cert.b = b;
  cert.boundary_a = a;
  cert.boundary_b = b;
  if (!subject.empty()) {
    cert.decomp.bags = {subject};
    cert.bag_centers = {subject};
    cert.boundary_centers = g.boundary(subject);
  }
  auto chk = verify_quasi_bound_cert(g, cert);
  if (!chk) throw std::logic_error("trivial_cert invalid: " + chk.violation);
  return cert;
}

QuasiBoundCert compose_line_decompositions(const Graph& g,
                                           const std::vector<CompositionPiece>& pieces,
                                           const LineDecomposition& outer, int k) {
  long long a = 0, b = 0;
  VertexSet all;
  std::vector<VertexSet> bds(pieces.size());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    if (p.verts != p.cert.subject)
      throw GraphError("compose: piece vertex set differs from its certificate subject");
    for (std::size_t j = i + 1; j < pieces.size(); ++j)
      if (sets_intersect(p.verts, pieces[j].verts)) throw GraphError("compose: pieces overlap");
    auto chk = verify_quasi_bound_cert(g, p.cert);
    if (!chk) throw GraphError("compose: piece certificate invalid: " + chk.violation);
    a = std::max({a, p.cert.a, p.cert.boundary_a});
    b = std::max({b, p.cert.b, p.cert.boundary_b});
    bds[i] = g.boundary(p.verts);
    all = set_union(all, p.verts);
  }

  VertexSet z;
  for (const auto& bd : bds) z = set_union(z, bd);
  auto chk = verify_line_decomposition(g, z, outer);
  if (!chk) throw GraphError("compose: outer decomposition invalid: " + chk.violation);

  // Each outer bag must be a union of at most k piece boundaries.
  std::vector<std::vector<int>> bag_pieces(outer.bags.size());
  for (std::size_t t = 0; t < outer.bags.size(); ++t) {
    VertexSet expect;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      if (sets_intersect(outer.bags[t], bds[i])) {
        bag_pieces[t].push_back(static_cast<int>(i));
        expect = set_union(expect, bds[i]);
      }
    }
    if (static_cast<int>(bag_pieces[t].size()) > k)
      throw GraphError("compose: outer bag holds more than k boundaries");
    if (expect != outer.bags[t])
      throw GraphError("compose: outer bag is not a union of piece boundaries");
  }

  // First outer position whose bag meets each piece (ordering anchor).
  std::vector<int> anchor(pieces.size(), -1);
  for (std::size_t t = 0; t < outer.bags.size(); ++t)
    for (int i : bag_pieces[t])
      if (anchor[i] == -1) anchor[i] = static_cast<int>(t);

  QuasiBoundCert out;
  out.subject = all;
  out.a = static_cast<long long>(k + 1) * a;
  out.b = b;

  auto outer_centers = [&](std::size_t t) {
    VertexSet cs;
    for (int i : bag_pieces[t]) cs = set_union(cs, pieces[i].cert.boundary_centers);
    return cs;
  };

  auto splice = [&](std::size_t i, const VertexSet& base, const VertexSet& base_centers) {
    for (std::size_t t = 0; t < pieces[i].cert.decomp.bags.size(); ++t) {
      out.decomp.bags.push_back(set_union(base, pieces[i].cert.decomp.bags[t]));
      out.bag_centers.push_back(set_union(base_centers, pieces[i].cert.bag_centers[t]));
    }
    out.decomp.bags.push_back(base);
    out.bag_centers.push_back(base_centers);
  };

  for (std::size_t t = 0; t < outer.bags.size(); ++t) {
    auto centers = outer_centers(t);
    out.decomp.bags.push_back(outer.bags[t]);
    out.bag_centers.push_back(centers);
    for (std::size_t i = 0; i < pieces.size(); ++i)
      if (anchor[i] == static_cast<int>(t)) splice(i, outer.bags[t], centers);
  }
  // Pieces with empty boundary never meet the outer decomposition; they have
  // no edges to the rest and splice at the end.
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (anchor[i] == -1 && !pieces[i].verts.empty()) {
      if (!bds[i].empty()) throw std::logic_error("compose: unanchored piece with boundary");
      splice(i, {}, {});
    }

  VertexSet bcs;
  for (const auto& p : pieces) bcs = set_union(bcs, p.cert.boundary_centers);
  out.boundary_centers = std::move(bcs);
  out.boundary_a = static_cast<long long>(out.boundary_centers.size());
  out.boundary_b = b;

  auto final_chk = verify_quasi_bound_cert(g, out);
  if (!final_chk) throw std::logic_error("compose output invalid: " + final_chk.violation);
  return out;
}

QuasiBoundCert restrict_cert(const QuasiBoundCert& cert, const VertexSet& keep) {
  QuasiBoundCert out;
  out.subject = set_intersection(cert.subject, keep);
  out.a = cert.a;
  out.b = cert.b;
  for (std::size_t t = 0; t < cert.decomp.bags.size(); ++t) {
    out.decomp.bags.push_back(set_intersection(cert.decomp.bags[t], keep));
    out.bag_centers.push_back(cert.bag_centers[t]);
  }
  out.boundary_a = 0;
  out.boundary_b = 0;
  return out;
}

QuasiBoundCert concat_certs(const Graph& g, const std::vector<QuasiBoundCert>& certs) {
  QuasiBoundCert out;
  for (const auto& c : certs) {
    for (const auto& prev : certs) {
      if (&prev == &c) break;
      if (g.touches(prev.subject, c.subject))
        throw GraphError("concat_certs: pieces touch");
    }
    out.subject = set_union(out.subject, c.subject);
    out.a = std::max(out.a, c.a);
    out.b = std::max(out.b, c.b);
    out.decomp.bags.insert(out.decomp.bags.end(), c.decomp.bags.begin(), c.decomp.bags.end());
    out.bag_centers.insert(out.bag_centers.end(), c.bag_centers.begin(), c.bag_centers.end());
    out.boundary_centers = set_union(out.boundary_centers, c.boundary_centers);
    out.boundary_b = std::max(out.boundary_b, c.boundary_b);
  }
  out.boundary_a = static_cast<long long>(out.boundary_centers.size());
  return out;
}

QuasiBoundCert pad_cert_with_set(const Graph&, const QuasiBoundCert& cert,
                                 const VertexSet& extra, const VertexSet& extra_centers,
                                 long long extra_radius) {
  QuasiBoundCert out;
  out.subject = set_union(cert.subject, extra);
  out.a = cert.a + static_cast<long long>(extra_centers.size());
  out.b = std::max(cert.b, extra_radius);
  if (cert.decomp.bags.empty()) {
    out.decomp.bags = {extra};
    out.bag_centers = {extra_centers};
  } else {
    for (std::size_t t = 0; t < cert.decomp.bags.size(); ++t) {
      out.decomp.bags.push_back(set_union(cert.decomp.bags[t], extra));
      out.bag_centers.push_back(set_union(cert.bag_centers[t], extra_centers));
    }
  }
  out.boundary_centers = cert.boundary_centers;
  out.boundary_a = cert.boundary_a;
  out.boundary_b = cert.boundary_b;
  return out;
}

}  // namespace cwl
