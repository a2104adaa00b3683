#include <doctest.h>

#include "cwl/corpus.hpp"
#include "cwl/tiebreak.hpp"
#include "oracles.hpp"

using namespace cwl;

TEST_CASE("lambda_compare: length dominates") {
  auto g = make_path(5);
  auto tb = TieBreaker::lex(g);
  LambdaPath p{{0, 1, 2}};
  LambdaPath q{{0, 1, 2, 3}};
  CHECK(lambda_compare(g, tb, p, q) == -1);
  CHECK(lambda_compare(g, tb, q, p) == 1);
}

TEST_CASE("lambda_compare: min differing edge decides equal lengths") {
  auto g = make_path(5);
  auto tb = TieBreaker::lex(g);
  // Edge (0,1) has rank 0, the minimum of the symmetric difference.
  LambdaPath left{{2, 1, 0}};
  LambdaPath right{{2, 3, 4}};
  CHECK(lambda_compare(g, tb, left, right) == -1);
  CHECK_THROWS(lambda_compare(g, tb, left, left));
}

TEST_CASE("lambda_compare is a total order on C_4 paths") {
  auto g = make_cycle(4);
  for (std::uint64_t seed : {0ull, 1ull, 42ull}) {
    auto tb = seed == 0 ? TieBreaker::lex(g) : TieBreaker::seeded(g, seed);
    std::vector<LambdaPath> paths;
    for (int v = 0; v < 4; ++v)
      oracle::enumerate_paths_from(g, v, [&](const std::vector<int>& p) {
        if (p.size() >= 2 && p.front() < p.back()) paths.push_back(LambdaPath{p});
      });
    for (const auto& p : paths)
      for (const auto& q : paths) {
        if (p.same_path_as(q)) continue;
        int pq = lambda_compare(g, tb, p, q);
        int qp = lambda_compare(g, tb, q, p);
        CHECK(pq == -qp);
      }
  }
}

TEST_CASE("lambda_geodesic on P_5 with lex ranks") {
  auto g = make_path(5);
  auto tb = TieBreaker::lex(g);
  auto path = lambda_geodesic(g, tb, 2, {0, 4});
  CHECK(path.verts == std::vector<int>{2, 1, 0});

  auto zero = lambda_geodesic(g, tb, 2, {2, 4});
  CHECK(zero.verts == std::vector<int>{2});

  CHECK_THROWS_AS(lambda_geodesic(Graph::from_edge_list(4, {{0, 1}, {2, 3}}), tb, 0, {3}),
                  GraphError);
}

TEST_CASE("tree geodesics ignore the ranking") {
  auto g = make_random_tree(20, 5);
  auto lex = TieBreaker::lex(g);
  auto seeded = TieBreaker::seeded(g, 99);
  for (int v : {0, 7, 13, 19}) {
    auto a = lambda_geodesic(g, lex, v, {3});
    auto b = lambda_geodesic(g, seeded, v, {3});
    CHECK(a.verts == b.verts);
  }
}

TEST_CASE("DP result equals full-enumeration Lambda minimum on small graphs") {
  int checked = 0;
  oracle::enumerate_connected_graphs(5, [&](const Graph& g) {
    if (++checked % 53 != 0) return;
    for (std::uint64_t seed : {1ull, 2ull}) {
      auto tb = TieBreaker::seeded(g, seed);
      for (int v = 0; v < g.vertex_count(); ++v) {
        VertexSet target{(v + 2) % g.vertex_count()};
        auto got = lambda_geodesic(g, tb, v, target);
        auto want = oracle::lambda_least_path(g, tb, v, target);
        REQUIRE(want.has_value());
        CHECK(got.verts == want->verts);
      }
    }
  });
}

TEST_CASE("subpath closure: prefixes of a geodesic are geodesics") {
  auto g = make_random_connected(24, 10, 11);
  auto tb = TieBreaker::seeded(g, 4);
  VertexSet target{0, 5};
  auto f = lambda_field(g, tb, {target});
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto path = f.path_from(v);
    for (std::size_t i = 1; i + 1 < path.verts.size(); ++i) {
      auto sub = f.path_from(path.verts[i]);
      std::vector<int> expect(path.verts.begin() + i, path.verts.end());
      CHECK(sub.verts == expect);
    }
  }
}

TEST_CASE("voronoi partition on P_5") {
  auto g = make_path(5);
  auto tb = TieBreaker::lex(g);
  auto vr = voronoi_partition(g, tb, {{0}, {4}});
  CHECK(vr.cells[0] == VertexSet{0, 1, 2});
  CHECK(vr.cells[1] == VertexSet{3, 4});
}

TEST_CASE("voronoi: single building owns everything; singletons own themselves") {
  auto g = make_random_connected(30, 12, 3);
  auto tb = TieBreaker::lex(g);
  auto vr = voronoi_partition(g, tb, {{7}});
  CHECK(vr.cells[0].size() == 30);

  std::vector<VertexSet> all;
  for (int v = 0; v < 30; ++v) all.push_back({v});
  auto vr2 = voronoi_partition(g, tb, all);
  for (int v = 0; v < 30; ++v) CHECK(vr2.cells[v] == VertexSet{v});
}

TEST_CASE("voronoi adjoin structure on P_9") {
  auto g = make_path(9);
  auto tb = TieBreaker::lex(g);
  auto vr = voronoi_partition(g, tb, {{0}, {4}, {8}});
  CHECK(vr.cells[0] == VertexSet{0, 1, 2});
  CHECK(vr.cells[1] == VertexSet{3, 4, 5, 6});
  CHECK(vr.cells[2] == VertexSet{7, 8});
  CHECK(adjoins(vr, g, 0, 1));
  CHECK(adjoins(vr, g, 1, 2));
  CHECK_FALSE(adjoins(vr, g, 0, 2));
  CHECK_THROWS_AS(adjoins(vr, g, 1, 1), GraphError);
}

TEST_CASE("voronoi rejects bad building families") {
  auto g = make_path(5);
  auto tb = TieBreaker::lex(g);
  CHECK_THROWS_AS(voronoi_partition(g, tb, {{0, 1}, {1, 2}}), GraphError);
  auto two = Graph::from_edge_list(4, {{0, 1}, {2, 3}});
  CHECK_THROWS_AS(voronoi_partition(two, TieBreaker::lex(two), {{0}}), GraphError);
}

TEST_CASE("voronoi uniqueness: cells are independent of candidate order") {
  // Identical input twice must give identical owners; and every vertex's
  // distance to its owner is minimal over the family.
  auto g = make_random_connected(60, 25, 17);
  auto tb = TieBreaker::seeded(g, 23);
  std::vector<VertexSet> buildings{{0}, {17, 18}, {40}};
  if (!g.has_edge(17, 18)) buildings[1] = {17};
  auto a = voronoi_partition(g, tb, buildings);
  auto b = voronoi_partition(g, tb, buildings);
  CHECK(a.field.owner == b.field.owner);
  for (int v = 0; v < g.vertex_count(); ++v) {
    for (const auto& x : buildings) {
      int dv = kInfDist;
      for (int u : x) dv = std::min(dv, g.distance(v, u));
      CHECK(a.field.dist[v] <= dv);
    }
  }
}
