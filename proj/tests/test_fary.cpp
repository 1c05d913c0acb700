#include "doctest.h"
#include "doodle/fary.hpp"
#include "doodle/reduce.hpp"
#include "fixtures.hpp"

using namespace doodle;

namespace {

// Planar K4: outer triangle A, B, C with D inside.
CombinatorialMap k4() {
  CombinatorialMap m;
  for (int i = 0; i < 12; ++i) m.add_dart();
  m.make_vertex({0, 1, 2});    // A: B, D, C
  m.make_vertex({3, 4, 5});    // B: C, D, A
  m.make_vertex({6, 7, 8});    // C: A, D, B
  m.make_vertex({9, 10, 11});  // D: A, B, C
  m.link_edge(0, 5);
  m.link_edge(1, 9);
  m.link_edge(2, 6);
  m.link_edge(3, 8);
  m.link_edge(4, 10);
  m.link_edge(7, 11);
  return m;
}

CombinatorialMap triangle() {
  CombinatorialMap m;
  for (int i = 0; i < 6; ++i) m.add_dart();
  m.make_vertex({0, 1});
  m.make_vertex({2, 3});
  m.make_vertex({4, 5});
  m.link_edge(1, 2);
  m.link_edge(3, 4);
  m.link_edge(5, 0);
  return m;
}

}  // namespace

TEST_CASE("embed: triangle") {
  CombinatorialMap m = triangle();
  for (const auto& f : m.faces()) {
    auto s = embed(m, f[0]);
    CHECK(verify_straight_drawing(s).ok);
    CHECK(s.clearance[0] > 0);
  }
}

TEST_CASE("embed: K4 with every choice of outer face") {
  CombinatorialMap m = k4();
  REQUIRE(m.face_count() == 4);
  for (const auto& f : m.faces()) {
    auto s = embed(m, f[0]);
    CHECK(verify_straight_drawing(s).ok);
  }
}

TEST_CASE("embed: octahedron core") {
  Doodle d = fix::octahedron();
  auto s = embed(d.map, d.outerFaceRep[0]);
  CHECK(verify_straight_drawing(s).ok);
  for (DartId x : d.map.darts()) CHECK(s.clearance[x] > 0);
}

TEST_CASE("embed: subdivided figure-eight core graph") {
  // The loop edges split into three subedges each; the outer face walk then
  // visits the old crossing twice, exercising the repeated-visit scaffolding.
  Doodle d = fix::figure_eight();
  auto [g, plan] = subdivide(d);
  auto faces = g.faces();
  for (const auto& f : faces) {
    auto s = embed(g, f[0]);
    CHECK(verify_straight_drawing(s).ok);
  }
}

TEST_CASE("embed: subdivided trefoil core graph") {
  Doodle d = fix::trefoil_shadow();
  auto [g, plan] = subdivide(d);
  auto s = embed(g, face_rep_of_index(g, face_index_of_dart(g, d.outerFaceRep[0])));
  CHECK(verify_straight_drawing(s).ok);
}

TEST_CASE("verify_straight_drawing flags crossings, rotation flips, wrong outer face") {
  SUBCASE("crossing segments") {
    // Two disjoint edges drawn crossing.
    StraightDrawing s;
    for (int i = 0; i < 4; ++i) s.graph.add_dart();
    s.graph.make_vertex({0});
    s.graph.make_vertex({1});
    s.graph.make_vertex({2});
    s.graph.make_vertex({3});
    s.graph.link_edge(0, 1);
    s.graph.link_edge(2, 3);
    s.pos = {Vec2q(Rational(0), Rational(0)), Vec2q(Rational(2), Rational(2)),
             Vec2q(Rational(0), Rational(2)), Vec2q(Rational(2), Rational(0))};
    s.outerFaceRep = 0;
    auto rep = verify_straight_drawing(s);
    bool crossing = false;
    for (const auto& v : rep.violations) crossing = crossing || v.rule == "segment-crossing";
    CHECK(crossing);
  }
  SUBCASE("flipped rotation at one vertex") {
    CombinatorialMap m = k4();
    auto good = embed(m, m.faces()[0][0]);
    StraightDrawing bad = good;
    // Swap two neighbors in D's rotation (darts 9,10,11).
    bad.graph.make_vertex({9, 11, 10});
    auto rep = verify_straight_drawing(bad);
    bool mismatch = false;
    for (const auto& v : rep.violations) mismatch = mismatch || v.rule == "rotation-mismatch";
    CHECK(mismatch);
  }
  SUBCASE("wrong outer face designation") {
    CombinatorialMap m = triangle();
    auto faces = m.faces();
    auto s = embed(m, faces[0][0]);
    StraightDrawing bad = s;
    bad.outerFaceRep = faces[1][0];
    auto rep = verify_straight_drawing(bad);
    bool wrong = false;
    for (const auto& v : rep.violations) wrong = wrong || v.rule == "outer-face";
    CHECK(wrong);
  }
}

TEST_CASE("embed rejects bad inputs") {
  CHECK_THROWS_AS(embed(fix::figure_eight().map, 0), MapError);  // loops
  CombinatorialMap path;  // a single edge: bridge
  for (int i = 0; i < 2; ++i) path.add_dart();
  path.make_vertex({0});
  path.make_vertex({1});
  path.link_edge(0, 1);
  CHECK_THROWS_AS(embed(path, 0), MapError);
}
