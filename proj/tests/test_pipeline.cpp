#include <doctest.h>

#include "cwl/corpus.hpp"
#include "cwl/pipeline.hpp"

using namespace cwl;

namespace {

Pipeline make_pipeline(const Graph& g, const Schedule& s) {
  return Pipeline(g, TieBreaker::lex(g), s);
}

}  // namespace

TEST_CASE("initial society: forts at d0-spaced positions on a path") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);  // d0 = 46
  auto g = make_path(150);
  Pipeline pl = make_pipeline(g, sched);
  auto s = pl.initial_society();
  REQUIRE(s.buildings.size() == 4);
  CHECK(s.buildings[0].verts == VertexSet{0});
  CHECK(s.buildings[1].verts == VertexSet{47});
  CHECK(s.buildings[2].verts == VertexSet{94});
  CHECK(s.buildings[3].verts == VertexSet{141});
  CHECK(pl.verify_society(s));

  auto single_graph = make_path(1);
  auto single = make_pipeline(single_graph, sched).initial_society();
  CHECK(single.buildings.size() == 1);
}

TEST_CASE("verify_society rejects broken covers and separations") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);
  auto g = make_path(150);
  Pipeline pl = make_pipeline(g, sched);
  auto s = pl.initial_society();

  auto missing = s;
  missing.buildings.erase(missing.buildings.begin() + 1);
  missing.voronoi = voronoi_partition(g, TieBreaker::lex(g), {{0}, {94}, {141}});
  missing.communities.clear();
  auto chk = pl.verify_society(missing);
  CHECK_FALSE(chk.ok);
  CHECK(chk.bullet.find("covering") != std::string::npos);

  auto crowded = s;
  Building extra;
  extra.verts = {50};
  extra.cls = BuildingClass::Fort;
  extra.cert = trivial_cert(g, {50}, 1, 1);
  FatModel m;
  m.c = 2;
  m.vertex_parts = {{50}};
  extra.model = m;
  extra.model_ell = 0;
  crowded.buildings.push_back(extra);
  crowded.voronoi =
      voronoi_partition(g, TieBreaker::lex(g), {{0}, {47}, {50}, {94}, {141}});
  auto chk2 = pl.verify_society(crowded);
  CHECK_FALSE(chk2.ok);
  CHECK(chk2.bullet.find("separation") != std::string::npos);
}

TEST_CASE("society_to_realm leaves a fort-only society unchanged") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);
  auto g = make_path(150);
  Pipeline pl = make_pipeline(g, sched);
  auto realm = pl.society_to_realm(pl.initial_society());
  CHECK(realm.kind == StateKind::Realm);
  CHECK(realm.buildings.size() == 4);
  CHECK(pl.verify_realm(realm));
}

TEST_CASE("passages on a fort chain") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);
  auto g = make_path(150);
  Pipeline pl = make_pipeline(g, sched);
  auto realm = pl.society_to_realm(pl.initial_society());
  auto ps = pl.find_passages(realm);
  REQUIRE(ps.size() == 3);  // consecutive fort pairs
  for (const auto& p : ps) CHECK(p.path.length() == 47);
  CHECK_FALSE(pl.find_castle_move(realm).has_value());
}

TEST_CASE("pipeline on a path yields the certificate") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);
  auto g = make_path(400);
  Pipeline pl = make_pipeline(g, sched);
  auto out = pl.run();
  REQUIRE_FALSE(out.is_witness);
  CHECK(out.certificate.a == sched.final_a());
  CHECK(out.certificate.b == sched.final_b());
  CHECK(cert_meets(g, out.certificate, sched.final_a(), sched.final_b()));
  bool advanced = false;
  for (const auto& e : out.audit) advanced = advanced || e.op == "advance_century";
  CHECK(advanced);
}

TEST_CASE("pipeline on a cycle yields the certificate") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);
  auto g = make_cycle(400);
  Pipeline pl = make_pipeline(g, sched);
  auto out = pl.run();
  REQUIRE_FALSE(out.is_witness);
  CHECK(cert_meets(g, out.certificate, sched.final_a(), sched.final_b()));
}

TEST_CASE("pipeline on a subdivided star finds the claw witness") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);  // d0 = 46
  auto g = make_subdivided_star(3, 5 * 47);  // arms of 236 edges
  Pipeline pl = make_pipeline(g, sched);
  auto out = pl.run();
  REQUIRE(out.is_witness);
  REQUIRE(out.witness.has_value());
  CHECK(out.witness->ell == 1);
  auto chk = verify_superfat(g, build_pattern_tree(1), out.witness->model);
  CHECK(chk.ok);
  bool moved = false;
  for (const auto& e : out.audit) moved = moved || e.op == "castle_move";
  CHECK(moved);
}

TEST_CASE("pipeline is deterministic") {
  auto sched = make_schedule(2, 1, ScheduleMode::Minimal);
  auto g = make_subdivided_star(3, 5 * 47);
  auto out1 = make_pipeline(g, sched).run();
  auto out2 = make_pipeline(g, sched).run();
  REQUIRE(out1.is_witness == out2.is_witness);
  REQUIRE(out1.is_witness);
  CHECK(out1.witness->model.vertex_parts == out2.witness->model.vertex_parts);
  CHECK(out1.witness->model.edge_parts == out2.witness->model.edge_parts);
  CHECK(out1.audit.size() == out2.audit.size());
}

TEST_CASE("ell=2 on a long path reaches century 2 with a certificate") {
  auto sched = make_schedule(2, 2, ScheduleMode::Minimal);  // d0 = 190
  auto g = make_path(1200);
  Pipeline pl = make_pipeline(g, sched);
  auto out = pl.run();
  REQUIRE_FALSE(out.is_witness);
  CHECK(cert_meets(g, out.certificate, sched.final_a(), sched.final_b()));
  int advances = 0;
  for (const auto& e : out.audit)
    if (e.op == "advance_century") ++advances;
  CHECK(advances == 2);
}

TEST_CASE("government machinery: primordial government on a realm with a castle") {
  // ell = 2 so that a century-0 castle is a type-1 province, not a witness.
  auto sched = make_schedule(2, 2, ScheduleMode::Minimal);  // d0 = 190
  auto g = make_subdivided_star(3, 5 * 191);                // arms of 956 edges
  Pipeline pl = make_pipeline(g, sched);
  auto realm = pl.society_to_realm(pl.initial_society());
  auto move = pl.find_castle_move(realm);
  REQUIRE(move.has_value());
  auto res = pl.apply_castle_move(realm, *move);
  REQUIRE(std::holds_alternative<RealmState>(res));
  auto next = std::get<RealmState>(res);
  int castles = 0;
  for (const auto& b : next.buildings)
    if (b.cls == BuildingClass::Castle) ++castles;
  CHECK(castles == 1);
  CHECK(pl.verify_realm(next));

  // The hub is consumed; no second move on this host.
  CHECK_FALSE(pl.find_castle_move(next).has_value());

  auto gov = pl.primordial_government(next);
  CHECK(gov.provinces.size() == 1);
  CHECK(gov.provinces[0].type == 1);
  CHECK(pl.verify_government(next, gov));
  CHECK_FALSE(pl.find_cabal(next, gov).has_value());

  auto stab = pl.stabilize_government(next, gov);
  REQUIRE(std::holds_alternative<Government>(stab));
  auto soc1 = pl.advance_century(next, std::get<Government>(stab));
  CHECK(soc1.century == 1);
  CHECK(pl.verify_society(soc1));
  int forts = 0;
  for (const auto& b : soc1.buildings)
    if (b.cls == BuildingClass::Fort) ++forts;
  CHECK(forts == 1);  // the framework
}

TEST_CASE("subdivided H_2 host at ell=2 produces a verified H_2 witness") {
  auto sched = make_schedule(2, 2, ScheduleMode::Minimal);  // d0 = 190
  auto g = make_subdivided_tree(2, 5 * 190);
  Pipeline pl = make_pipeline(g, sched);
  auto out = pl.run();
  REQUIRE(out.is_witness);
  CHECK(out.witness->ell == 2);
  CHECK(verify_superfat(g, build_pattern_tree(2), out.witness->model).ok);
  int moves = 0;
  for (const auto& e : out.audit)
    if (e.op == "castle_move") ++moves;
  CHECK(moves >= 1);
}

TEST_CASE("tripod junction: cabal and revolution produce the H_2 witness") {
  auto sched = make_schedule(2, 2, ScheduleMode::Minimal);  // d0 = 190
  const int spacing = static_cast<int>(sched.d0) + 1;       // 191
  auto g = make_tripod_junction(spacing, 2 * spacing);
  Pipeline pl(g, TieBreaker::lex(g), sched);
  auto out = pl.run();
  REQUIRE(out.is_witness);
  CHECK(out.witness->ell == 2);
  CHECK(verify_superfat(g, build_pattern_tree(2), out.witness->model).ok);
  int moves = 0, revolutions = 0;
  for (const auto& e : out.audit) {
    if (e.op == "castle_move") ++moves;
    if (e.op == "revolution") ++revolutions;
  }
  CHECK(moves == 3);        // one castle per tripod hub
  CHECK(revolutions == 1);  // the junction cabal reaches ell
}
