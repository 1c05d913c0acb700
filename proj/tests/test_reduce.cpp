#include <set>

#include "doctest.h"
#include "doodle/canonical.hpp"
#include "doodle/corpus.hpp"
#include "doodle/reduce.hpp"
#include "fixtures.hpp"

using namespace doodle;

TEST_CASE("find_reduction: figure-eight gets a Loop1 on a length-1 face") {
  Doodle d = fix::figure_eight();
  auto r = find_reduction(d);
  REQUIRE(r.has_value());
  CHECK(r->kind == Reduction::Kind::Loop1);
  CHECK(r->collapse);  // the other edge is also a loop
}

TEST_CASE("apply_reduction: figure-eight collapses to a circle") {
  Doodle d = fix::figure_eight();
  Reduction r = *find_reduction(d);
  Doodle c = apply_reduction(d, r);
  CHECK(validate(c).ok);
  CHECK(c.n() == 0);
  REQUIRE(c.freeLoops.size() == 1);
  CHECK(map_isomorphic(c, fix::circle()));
  // round trip
  Doodle back = undo_reduction(c, r);
  CHECK(validate(back).ok);
  CHECK(map_isomorphic(back, d));
  CHECK(canonical_string(back) == canonical_string(d));
}

TEST_CASE("find_reduction: lens face of two crossing circles, contraction gives figure-eight") {
  Doodle d = fix::two_circle_lens();
  auto r = find_reduction(d);
  REQUIRE(r.has_value());
  CHECK(r->kind == Reduction::Kind::Bigon);
  CHECK(r->d1 == 0);
  CHECK(r->d2 == 4);
  Reduction step = *r;
  Doodle e = apply_reduction(d, step);
  CHECK(validate(e).ok);
  CHECK(e.n() == 1);
  CHECK(map_isomorphic(e, fix::figure_eight()));
  Doodle back = undo_reduction(e, step);
  CHECK(map_isomorphic(back, d));
}

TEST_CASE("find_reduction: irreducible core returns none") {
  Doodle d = fix::octahedron();
  bool terminal = false;
  auto r = find_reduction(d, &terminal);
  CHECK(!r.has_value());
  CHECK(!terminal);
}

TEST_CASE("reduce_fully: examples") {
  SUBCASE("figure-eight -> circle, trace length 1") {
    auto [core, trace] = reduce_fully(fix::figure_eight());
    CHECK(core.n() == 0);
    CHECK(trace.steps.size() == 1);
    CHECK(map_isomorphic(core, fix::circle()));
  }
  SUBCASE("circle -> circle, empty trace") {
    auto [core, trace] = reduce_fully(fix::circle());
    CHECK(trace.steps.empty());
    CHECK(map_isomorphic(core, fix::circle()));
  }
  SUBCASE("trefoil shadow reduces to a circle via bigons first") {
    auto [core, trace] = reduce_fully(fix::trefoil_shadow());
    CHECK(core.n() == 0);
    CHECK(trace.steps.size() == 3);
    CHECK(trace.initialN == 3);
  }
  SUBCASE("octahedron is its own core") {
    auto [core, trace] = reduce_fully(fix::octahedron());
    CHECK(trace.steps.empty());
    CHECK(core.n() == 6);
  }
}

TEST_CASE("trace length equals n(input) - n(core), and undo round-trips (corpus property)") {
  auto corpus = exhaustive_connected(3);
  for (const auto& d : corpus) {
    auto [core, trace] = reduce_fully(d);
    CHECK(static_cast<int>(trace.steps.size()) == d.n() - core.n());
    CHECK(validate(core).ok);
    Doodle back = core;
    for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it)
      back = undo_reduction(back, *it);
    CHECK(validate(back).ok);
    CHECK(map_isomorphic(back, d));
  }
}

TEST_CASE("reduction keeps connected doodles connected") {
  auto corpus = exhaustive_connected(3);
  for (const auto& d : corpus) {
    if (d.map.dart_count() == 0) continue;
    auto r = find_reduction(d);
    if (!r) continue;
    Reduction step = *r;
    Doodle e = apply_reduction(d, step);
    int pieces = e.map.component_count() + static_cast<int>(e.freeLoops.size());
    CHECK(pieces == 1);
  }
}

TEST_CASE("assert_no_triple_edges rejects a quadruple edge map") {
  // Two vertices joined by four parallel edges (a valid 4-regular planar map).
  CombinatorialMap m;
  for (int i = 0; i < 8; ++i) m.add_dart();
  m.make_vertex({0, 1, 2, 3});
  m.make_vertex({4, 5, 6, 7});
  m.link_edge(0, 7);
  m.link_edge(1, 6);
  m.link_edge(2, 5);
  m.link_edge(3, 4);
  CHECK_THROWS_AS(assert_no_triple_edges(m), MapError);
}

TEST_CASE("subdivide: loops get two fake vertices, parallel pairs one") {
  SUBCASE("figure-eight: both loop edges split into three subedges") {
    auto [g, plan] = subdivide(fix::figure_eight());
    CHECK(plan.fakeVertexCount == 4);
    CHECK(g.vertex_count() == 5);
    CHECK(g.edge_count() == 6);
    CHECK(plan.chainOfDart.at(0).size() == 3);
    CHECK(plan.chainOfDart.at(2).size() == 3);
    CHECK(plan.loopEdges.size() == 2);
  }
  SUBCASE("trefoil: one member of each parallel pair split once") {
    auto [g, plan] = subdivide(fix::trefoil_shadow());
    CHECK(plan.fakeVertexCount == 3);
    CHECK(g.vertex_count() == 6);
    CHECK(g.edge_count() == 9);
    int split = 0, plain = 0;
    for (const auto& [d, chain] : plan.chainOfDart) {
      if (chain.size() == 2) ++split;
      if (chain.size() == 1) ++plain;
    }
    CHECK(split == 6);  // three split edges, two travel directions each
    CHECK(plain == 6);
  }
  SUBCASE("octahedron: simple already, untouched") {
    auto [g, plan] = subdivide(fix::octahedron());
    CHECK(plan.fakeVertexCount == 0);
    CHECK(g.vertex_count() == 6);
  }
}

TEST_CASE("corpus moves: validity and crossing counts") {
  Doodle circle = fix::circle();
  Doodle eight = add_loop_on_free_loop(circle, 0, false);
  CHECK(validate(eight).ok);
  CHECK(eight.n() == 1);
  CHECK(map_isomorphic(eight, fix::figure_eight()));
  Doodle curled = add_loop_on_free_loop(circle, 0, true);
  CHECK(validate(curled).ok);
  CHECK(map_isomorphic(curled, fix::curl()));
  CHECK(!map_isomorphic(eight, curled));

  for (DartId x : eight.map.darts()) {
    for (bool side : {false, true}) {
      Doodle d2 = add_loop(eight, x, side);
      CHECK(validate(d2).ok);
      CHECK(d2.n() == 2);
    }
    Doodle d3 = split_vertex(eight, x);
    CHECK(validate(d3).ok);
    CHECK(d3.n() == 2);
  }
}

TEST_CASE("exhaustive corpus matches the brute-force oracle for n <= 3") {
  auto closure = exhaustive_connected(3);
  std::map<int, int> byN;
  for (const auto& d : closure) byN[d.n()]++;

  std::map<int, int> oracle;
  for (int n = 0; n <= 3; ++n) oracle[n] = static_cast<int>(brute_force_connected(n).size());

  CHECK(byN[0] == oracle[0]);
  CHECK(byN[1] == oracle[1]);
  CHECK(byN[2] == oracle[2]);
  CHECK(byN[3] == oracle[3]);

  CHECK(oracle[0] == 1);  // circle
  CHECK(oracle[1] == 2);  // figure-eight and curl
}

TEST_CASE("corpus closure: every generated doodle validates") {
  for (const auto& d : exhaustive_connected(3)) CHECK(validate(d).ok);
  for (const auto& d : random_corpus(1, 25, 6)) {
    CHECK(validate(d).ok);
    CHECK(d.n() >= 1);
    CHECK(d.n() <= 6);
  }
  // determinism
  auto a = random_corpus(7, 10, 5);
  auto b = random_corpus(7, 10, 5);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i)
    CHECK(canonical_string(a[i]) == canonical_string(b[i]));
}
