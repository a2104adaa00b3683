#include <doctest.h>

#include "cwl/corpus.hpp"
#include "cwl/minors.hpp"
#include "oracles.hpp"

using namespace cwl;

TEST_CASE("build_pattern_tree shapes") {
  auto h0 = build_pattern_tree(0);
  CHECK(h0.vertex_count() == 1);
  auto h1 = build_pattern_tree(1);
  CHECK(h1.vertex_count() == 4);
  CHECK(h1.tree.neighbors(0).size() == 3);
  auto h2 = build_pattern_tree(2);
  CHECK(h2.vertex_count() == 10);
  CHECK(h2.tree.edge_count() == 9);
  for (int v = 0; v < h2.vertex_count(); ++v) {
    auto deg = h2.tree.neighbors(v).size();
    CHECK((deg == 1 || deg == 3));
  }
  CHECK(is_pattern_tree_shape(h2.tree, 2));
  CHECK_FALSE(is_pattern_tree_shape(h1.tree, 2));
}

TEST_CASE("verify_minor_model basics") {
  auto g = make_path(3);
  MinorModel ident{{{0}, {1}, {2}}};
  CHECK(verify_minor_model(g, g, ident));

  MinorModel overlap{{{0, 1}, {1}, {2}}};
  CHECK_FALSE(verify_minor_model(g, g, overlap).ok);

  // K_{1,3} inside a subdivided star, built by hand.
  auto star = make_subdivided_star(3, 1);  // arms of 2 edges: hub 0; arms (1,2),(3,4),(5,6)
  auto h1 = build_pattern_tree(1);
  MinorModel m{{{0}, {1, 2}, {3, 4}, {5, 6}}};
  CHECK(verify_minor_model(star, h1.tree, m));
}

TEST_CASE("find_minor_model agrees with the exhaustive enumerator") {
  auto h1 = build_pattern_tree(1);
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    auto g = make_random_connected(7, static_cast<int>(seed % 4), seed * 31 + 5);
    auto got = find_minor_model(g, h1.tree, 2000000);
    REQUIRE(got.status != SearchStatus::Unknown);
    bool want = oracle::minor_exists_exhaustive(g, h1.tree);
    CHECK((got.status == SearchStatus::Found) == want);
  }
}

TEST_CASE("paths contain no claw minor; stars do") {
  auto h1 = build_pattern_tree(1);
  auto res = find_minor_model(make_path(12), h1.tree, 1000000);
  CHECK(res.status == SearchStatus::Absent);

  auto star = Graph::from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}});
  auto res2 = find_minor_model(star, h1.tree, 1000000);
  CHECK(res2.status == SearchStatus::Found);

  // H_2 has ten vertices, one more than the 3x3 grid can host.
  auto grid = make_grid(3, 3);
  auto h2 = build_pattern_tree(2);
  auto res3 = find_minor_model(grid, h2.tree, 4000000);
  CHECK(res3.status == SearchStatus::Absent);

  auto host = make_subdivided_tree(2, 1);
  auto res4 = find_minor_model(host, h2.tree, 4000000);
  CHECK(res4.status == SearchStatus::Found);
}

namespace {

// H_1 fat model in a subdivided star with arms of `arm_len` edges: the root
// part takes the hub plus arm positions 1..3c, the edge parts take positions
// 3c+1..arm_len-1, the leaf parts are the tips. Needs arm_len >= 4c+2.
FatModel star_model(int arm_len, long long c) {
  FatModel m;
  m.c = c;
  m.vertex_parts.resize(4);
  m.edge_parts.resize(3);
  VertexSet root{0};
  for (int i = 0; i < 3; ++i) {
    int first = 1 + i * arm_len;
    for (int p = 0; p < 3 * c; ++p) root.push_back(first + p);
    VertexSet mid;
    for (int p = 3 * c; p + 1 < arm_len; ++p) mid.push_back(first + p);
    m.edge_parts[i] = mid;
    m.vertex_parts[i + 1] = {first + arm_len - 1};
  }
  m.vertex_parts[0] = make_vertex_set(std::move(root));
  return m;
}

}  // namespace

TEST_CASE("verify_fat_minor on hand-built star models") {
  const long long c = 2;
  const int arm = 10 * static_cast<int>(c);
  auto star = make_subdivided_star(3, arm - 1);
  auto h1 = build_pattern_tree(1);
  auto m = star_model(arm, c);
  CHECK(verify_fat_minor(star, h1.tree, m));
  CHECK(verify_superfat(star, h1, m));

  // Root-to-tip distance is arm - 3c = 7c; claiming fatness at 7c fails.
  auto worse = m;
  worse.c = arm - 3 * c;
  auto chk = verify_fat_minor(star, h1.tree, worse);
  CHECK_FALSE(chk.ok);
}

TEST_CASE("superfat fails when two branches come within 3c") {
  const long long c = 2;
  const int arm = 10 * static_cast<int>(c);
  // Subdivided star plus a connector of length 2c between tips 1 and 2.
  std::vector<std::pair<int, int>> edges;
  auto star = make_subdivided_star(3, arm - 1);
  edges = star.edges();
  int tip1 = arm, tip2 = 2 * arm;
  int next = star.vertex_count();
  int prev = tip1;
  for (int s = 0; s + 1 < 2 * c; ++s) {
    edges.emplace_back(prev, next);
    prev = next++;
  }
  edges.emplace_back(prev, tip2);
  auto g = Graph::from_edge_list(next, edges);

  auto h1 = build_pattern_tree(1);
  auto m = star_model(arm, c);
  CHECK(verify_fat_minor(g, h1.tree, m));  // tips now 2c apart, still > c
  auto chk = verify_superfat(g, h1, m);
  CHECK_FALSE(chk.ok);
  CHECK(chk.violation.find("branches") != std::string::npos);
}

TEST_CASE("H_0 superfat is just a nonempty connected part") {
  auto g = make_path(3);
  auto h0 = build_pattern_tree(0);
  FatModel m;
  m.c = 5;
  m.vertex_parts = {{1}};
  CHECK(verify_superfat(g, h0, m));
}

TEST_CASE("monotonicity: a c-fat model is c'-fat for smaller c'") {
  const long long c = 4;
  const int arm = 10 * static_cast<int>(c);
  auto star = make_subdivided_star(3, arm - 1);
  auto h1 = build_pattern_tree(1);
  auto m = star_model(arm, c);
  REQUIRE(verify_fat_minor(star, h1.tree, m));
  for (long long lower = c; lower >= 0; --lower) {
    auto weak = m;
    weak.c = lower;
    CHECK(verify_fat_minor(star, h1.tree, weak));
  }
}

TEST_CASE("trim_for_claw peels to exact distance c+1") {
  const long long c = 2;
  auto star = make_subdivided_star(3, 4 * static_cast<int>(c) - 1);  // arms of 4c edges
  std::vector<VertexSet> unions{{8}, {16}, {24}};
  VertexSet w = star.ball({0}, 3 * c);
  auto trimmed = trim_for_claw(star, w, unions, c);
  CHECK(star.is_connected_induced(trimmed));
  for (const auto& mu : unions) CHECK(star.set_distance(trimmed, mu) == c + 1);
}

TEST_CASE("claw_combine builds a verified H_1 from three H_0 tips") {
  const long long c = 2;
  auto star = make_subdivided_star(3, 4 * static_cast<int>(c) - 1);
  auto tb = TieBreaker::lex(star);
  std::array<FatModel, 3> models;
  for (int h = 0; h < 3; ++h) {
    models[h].c = c;
    models[h].vertex_parts = {{8 * (h + 1)}};
  }
  std::vector<VertexSet> unions;
  for (auto& m : models) unions.push_back(m.all_vertices());
  auto w = trim_for_claw(star, star.ball({0}, 3 * c), unions, c);
  auto legs = make_claw_legs(star, tb, w, models);
  auto out = claw_combine(star, 0, models, w, legs, c);
  CHECK(out.c == c);
  CHECK(verify_superfat(star, build_pattern_tree(1), out));
}

TEST_CASE("claw_combine rejects models closer than 5c+2") {
  const long long c = 2;
  auto star = make_subdivided_star(3, 5);  // arms of 6 edges; tips pairwise 12 = 5c+2 apart
  auto tb = TieBreaker::lex(star);
  std::array<FatModel, 3> models;
  for (int h = 0; h < 3; ++h) {
    models[h].c = c;
    models[h].vertex_parts = {{6 * (h + 1)}};
  }
  std::vector<VertexSet> unions;
  for (auto& m : models) unions.push_back(m.all_vertices());
  auto w = trim_for_claw(star, star.ball({0}, 3), unions, c);
  auto legs = make_claw_legs(star, tb, w, models);
  CHECK_THROWS_AS(claw_combine(star, 0, models, w, legs, c), GraphError);
}

TEST_CASE("nested claw: H_2 from three H_1 models on a tripod of tripods") {
  const long long c = 2;
  // Three inner tripods (arms of 4c) hanging off a central hub by spokes of 40.
  std::vector<std::pair<int, int>> edges;
  int next = 0;
  int center = next++;
  std::array<int, 3> hubs{};
  std::array<std::array<int, 3>, 3> tips{};
  for (int i = 0; i < 3; ++i) {
    int prev = center;
    for (int s = 0; s < 40; ++s) {
      int v = next++;
      edges.emplace_back(prev, v);
      prev = v;
    }
    hubs[i] = prev;
    for (int a = 0; a < 3; ++a) {
      int p = hubs[i];
      for (int s = 0; s < 4 * c; ++s) {
        int v = next++;
        edges.emplace_back(p, v);
        p = v;
      }
      tips[i][a] = p;
    }
  }
  auto g = Graph::from_edge_list(next, edges);
  auto tb = TieBreaker::lex(g);

  std::array<FatModel, 3> h1_models;
  for (int i = 0; i < 3; ++i) {
    std::array<FatModel, 3> h0;
    std::vector<VertexSet> unions;
    for (int a = 0; a < 3; ++a) {
      h0[a].c = c;
      h0[a].vertex_parts = {{tips[i][a]}};
      unions.push_back({tips[i][a]});
    }
    auto w = trim_for_claw(g, g.ball({hubs[i]}, 3 * c), unions, c, hubs[i]);
    auto legs = make_claw_legs(g, tb, w, h0);
    h1_models[i] = claw_combine(g, 0, h0, w, legs, c);
    REQUIRE(verify_superfat(g, build_pattern_tree(1), h1_models[i]));
  }

  std::vector<VertexSet> unions;
  for (auto& m : h1_models) unions.push_back(m.all_vertices());
  auto w = trim_for_claw(g, g.ball({center}, 40), unions, c, center);
  auto legs = make_claw_legs(g, tb, w, h1_models);
  auto h2 = claw_combine(g, 1, h1_models, w, legs, c);
  CHECK(verify_superfat(g, build_pattern_tree(2), h2));
}

TEST_CASE("verify_quasi_isometry bullets") {
  auto p10 = make_path(10);
  QuasiIsometryMap ident;
  ident.phi.resize(10);
  for (int i = 0; i < 10; ++i) ident.phi[i] = i;
  ident.L = 1;
  ident.C = 0;
  CHECK(verify_quasi_isometry(p10, p10, ident));

  auto p5 = make_path(5);
  QuasiIsometryMap halve;
  halve.phi.resize(10);
  for (int i = 0; i < 10; ++i) halve.phi[i] = i / 2;
  halve.L = 2;
  halve.C = 1;
  CHECK(verify_quasi_isometry(p10, p5, halve));

  auto k1 = Graph::from_edge_list(1, {});
  QuasiIsometryMap collapse;
  collapse.phi.assign(10, 0);
  collapse.L = 1;
  collapse.C = 0;
  auto chk = verify_quasi_isometry(p10, k1, collapse);
  CHECK_FALSE(chk.ok);
  CHECK(chk.violation.find("lower") != std::string::npos);
}

TEST_CASE("transfer_fat_minor: subdivision contraction produces a verified claw minor") {
  const long long L = 3, C = 2;
  const long long c = L * (L + C) + C;  // 17
  const int arm = 6 * static_cast<int>(c);
  auto g = make_subdivided_star(3, arm - 1);
  auto gp = make_subdivided_star(3, arm / 3 - 1);
  QuasiIsometryMap q;
  q.phi.assign(g.vertex_count(), 0);
  for (int a = 0; a < 3; ++a)
    for (int i = 1; i <= arm; ++i) {
      int gv = a * arm + i;
      int pos = (i + 1) / 3;
      q.phi[gv] = pos == 0 ? 0 : a * (arm / 3) + pos;
    }
  q.L = L;
  q.C = C;
  REQUIRE(verify_quasi_isometry(g, gp, q));

  auto h1 = build_pattern_tree(1);
  auto m = star_model(arm, c);
  REQUIRE(verify_fat_minor(g, h1.tree, m));

  auto res = transfer_fat_minor(g, gp, q, h1.tree, m, 1000000);
  CHECK(verify_minor_model(gp, h1.tree, res.model));

  auto tight = m;
  tight.c = c - 1;
  CHECK_THROWS_AS(transfer_fat_minor(g, gp, q, h1.tree, tight, 1000000), GraphError);
}
