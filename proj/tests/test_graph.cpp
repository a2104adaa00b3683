#include <doctest.h>

#include "cwl/corpus.hpp"
#include "cwl/graph.hpp"
#include "oracles.hpp"

using namespace cwl;

TEST_CASE("from_edge_list basics") {
  auto g = Graph::from_edge_list(2, {{0, 1}});
  CHECK(g.edge_count() == 1);

  auto dup = Graph::from_edge_list(3, {{0, 1}, {0, 1}, {1, 0}});
  CHECK(dup.edge_count() == 1);

  CHECK_THROWS_AS(Graph::from_edge_list(4, {{0, 0}}), GraphError);
  CHECK_THROWS_AS(Graph::from_edge_list(2, {{0, 5}}), GraphError);
}

TEST_CASE("distance") {
  auto p5 = make_path(5);
  CHECK(p5.distance(0, 4) == 4);
  CHECK(p5.distance(2, 2) == 0);

  auto two = Graph::from_edge_list(4, {{0, 1}, {2, 3}});
  CHECK(two.distance(0, 3) == kInfDist);
  CHECK_THROWS_AS(p5.distance(0, 9), GraphError);
}

TEST_CASE("set_distance") {
  auto p10 = make_path(10);
  CHECK(p10.set_distance({0}, {9}) == 9);
  CHECK(p10.set_distance({0, 1, 2}, {2, 5}) == 0);
  auto two = Graph::from_edge_list(4, {{0, 1}, {2, 3}});
  CHECK(two.set_distance({0}, {3}) == kInfDist);
  CHECK_THROWS_AS(p10.set_distance({}, {1}), GraphError);
}

TEST_CASE("ball") {
  auto p9 = make_path(9);
  CHECK(p9.ball({4}, 0) == VertexSet{4});
  CHECK(p9.ball({4}, 2) == VertexSet{2, 3, 4, 5, 6});
  CHECK(p9.ball({0}, 100).size() == 9);
}

TEST_CASE("boundary") {
  auto p5 = make_path(5);
  CHECK(p5.boundary({1, 2, 3}) == VertexSet{1, 3});
  CHECK(p5.boundary({0, 1, 2, 3, 4}).empty());
  CHECK(p5.boundary({}).empty());
}

TEST_CASE("touches") {
  auto p4 = make_path(4);
  CHECK(p4.touches({0, 1}, {1, 2}));
  CHECK(p4.touches({0}, {1}));
  CHECK_FALSE(p4.touches({0}, {3}));
}

TEST_CASE("is_connected_induced") {
  auto p5 = make_path(5);
  CHECK(p5.is_connected_induced({2}));
  CHECK_FALSE(p5.is_connected_induced({0, 2}));
  CHECK(p5.is_connected_induced({1, 2, 3}));
  CHECK_FALSE(p5.is_connected_induced({}));
}

TEST_CASE("distance is a metric on small connected graphs") {
  int graphs = 0;
  oracle::enumerate_connected_graphs(5, [&](const Graph& g) {
    if (++graphs % 37 != 0) return;  // sample to keep the suite quick
    const int n = g.vertex_count();
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        CHECK(g.distance(u, v) == g.distance(v, u));
        for (int w = 0; w < n; ++w)
          CHECK(g.distance(u, w) <= g.distance(u, v) + g.distance(v, w));
      }
  });
  CHECK(graphs == 728);
}

TEST_CASE("ball monotonicity") {
  auto g = make_random_connected(40, 15, 7);
  VertexSet x{3, 11};
  for (int r = 0; r < 6; ++r) {
    auto a = g.ball(x, r);
    auto b = g.ball(x, r + 1);
    CHECK(is_subset(a, b));
  }
  CHECK(is_subset(g.ball({3}, 4), g.ball(x, 4)));
}

TEST_CASE("boundary empty iff union of components") {
  auto g = Graph::from_edge_list(6, {{0, 1}, {1, 2}, {3, 4}});
  CHECK(g.boundary({0, 1, 2}).empty());
  CHECK(g.boundary({3, 4, 5}).empty());
  CHECK_FALSE(g.boundary({0, 1}).empty());
}

TEST_CASE("components") {
  auto g = Graph::from_edge_list(5, {{0, 1}, {3, 4}});
  auto comps = g.components();
  REQUIRE(comps.size() == 3);
  CHECK(comps[0] == VertexSet{0, 1});
  CHECK(comps[1] == VertexSet{2});
  CHECK(comps[2] == VertexSet{3, 4});
}
