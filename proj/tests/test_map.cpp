#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "doodle/canonical.hpp"
#include "doodle/io.hpp"
#include "fixtures.hpp"

using namespace doodle;

namespace {

// Relabels all darts by a random permutation; used for invariance properties.
Doodle relabeled(const Doodle& d, std::mt19937_64& rng) {
  auto darts = d.map.darts();
  std::vector<DartId> perm(darts.size());
  for (size_t i = 0; i < darts.size(); ++i) perm[i] = static_cast<DartId>(i);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<DartId> to(d.map.capacity(), kNoDart);
  for (size_t i = 0; i < darts.size(); ++i) to[darts[i]] = perm[i];

  Doodle out;
  for (size_t i = 0; i < darts.size(); ++i) out.map.add_dart();
  for (DartId x : darts) {
    out.map.set_sigma(to[x], to[d.map.sigma(x)]);
  }
  for (DartId x : darts)
    if (to[x] < to[d.map.alpha(x)]) out.map.link_edge(to[x], to[d.map.alpha(x)]);
  // Components may renumber; rebuild positional data.
  auto compNew = out.map.component_of_darts();
  int ncomp = out.map.component_count();
  out.outerFaceRep.assign(ncomp, kNoDart);
  out.nesting.assign(ncomp, Containment::root());
  auto compOld = d.map.component_of_darts();
  for (size_t c = 0; c < d.outerFaceRep.size(); ++c) {
    DartId rep = to[d.outerFaceRep[c]];
    Containment in = d.nesting[c];
    if (in.kind == Containment::Kind::Face) in.faceDart = to[in.faceDart];
    out.outerFaceRep[compNew[rep]] = rep;
    out.nesting[compNew[rep]] = in;
  }
  out.freeLoops = d.freeLoops;
  for (auto& fl : out.freeLoops)
    if (fl.in.kind == Containment::Kind::Face) fl.in.faceDart = to[fl.in.faceDart];
  return out;
}

std::multiset<size_t> face_lengths(const CombinatorialMap& m) {
  std::multiset<size_t> out;
  for (const auto& f : m.faces()) out.insert(f.size());
  return out;
}

}  // namespace

TEST_CASE("figure-eight: faces, Euler, strands") {
  Doodle d = fix::figure_eight();
  CHECK(validate(d).ok);
  CHECK(d.n() == 1);
  CHECK(d.map.vertex_count() == 1);
  CHECK(d.map.edge_count() == 2);
  CHECK(face_lengths(d.map) == std::multiset<size_t>{1, 1, 2});
  // V - E + F = 1 - 2 + 3 = 2
  CHECK(d.map.face_count() == 3);
  auto s = strands(d);
  REQUIRE(s.size() == 1);
  CHECK(s[0].size() == 4);
  CHECK(curve_count(d) == 1);
}

TEST_CASE("validate flags a 3-valent vertex") {
  Doodle d;
  for (int i = 0; i < 6; ++i) d.map.add_dart();
  d.map.make_vertex({0, 1, 2});
  d.map.make_vertex({3, 4, 5});
  d.map.link_edge(0, 3);
  d.map.link_edge(1, 4);
  d.map.link_edge(2, 5);
  d.outerFaceRep = {0};
  d.nesting = {Containment::root()};
  auto rep = validate(d);
  CHECK(!rep.ok);
  bool found = false;
  for (const auto& v : rep.violations) found = found || v.rule == "vertex-valency";
  CHECK(found);
}

TEST_CASE("validate: two nested circles are fine, freeLoops = 2") {
  Doodle d;
  d.freeLoops.push_back({"A", Containment::root()});
  d.freeLoops.push_back({"B", Containment::in_free_loop(0)});
  CHECK(validate(d).ok);
  CHECK(strands(d).empty());
  CHECK(curve_count(d) == 2);
}

TEST_CASE("validate: nesting cycle rejected") {
  Doodle d;
  d.freeLoops.push_back({"A", Containment::in_free_loop(1)});
  d.freeLoops.push_back({"B", Containment::in_free_loop(0)});
  auto rep = validate(d);
  CHECK(!rep.ok);
}

TEST_CASE("nonplanar one-vertex map fails the Euler check") {
  // Interleaved pairing (0-2)(1-3) puts the curve on the torus.
  Doodle d;
  for (int i = 0; i < 4; ++i) d.map.add_dart();
  d.map.make_vertex({0, 1, 2, 3});
  d.map.link_edge(0, 2);
  d.map.link_edge(1, 3);
  d.outerFaceRep = {0};
  d.nesting = {Containment::root()};
  auto rep = validate(d);
  CHECK(!rep.ok);
  bool found = false;
  for (const auto& v : rep.violations) found = found || v.rule == "euler";
  CHECK(found);
}

TEST_CASE("two circles crossing twice: faces and strands") {
  Doodle d = fix::two_circle_lens();
  CHECK(validate(d).ok);
  CHECK(d.n() == 2);
  CHECK(face_lengths(d.map) == std::multiset<size_t>{2, 2, 2, 2});
  CHECK(strands(d).size() == 2);
}

TEST_CASE("trefoil shadow: lobes 2,2,2 and two length-3 faces") {
  Doodle d = fix::trefoil_shadow();
  CHECK(validate(d).ok);
  CHECK(d.n() == 3);
  CHECK(face_lengths(d.map) == std::multiset<size_t>{2, 2, 2, 3, 3});
  CHECK(strands(d).size() == 1);
  // outer face is {0,4,8}
  auto outer = d.map.face_of(d.outerFaceRep[0]);
  std::set<DartId> o(outer.begin(), outer.end());
  CHECK(o == std::set<DartId>{0, 4, 8});
}

TEST_CASE("octahedron doodle: all faces triangles") {
  Doodle d = fix::octahedron();
  CHECK(validate(d).ok);
  CHECK(d.n() == 6);
  CHECK(d.map.edge_count() == 12);
  CHECK(d.map.face_count() == 8);
  for (const auto& f : d.map.faces()) CHECK(f.size() == 3);
}

TEST_CASE("face lengths sum to 2E") {
  for (const Doodle& d : {fix::figure_eight(), fix::two_circle_lens(), fix::trefoil_shadow(),
                          fix::octahedron()}) {
    size_t sum = 0;
    for (const auto& f : d.map.faces()) sum += f.size();
    CHECK(sum == 2 * static_cast<size_t>(d.map.edge_count()));
  }
}

TEST_CASE("isomorphism: mirror image and relabeling") {
  std::mt19937_64 rng(7);
  Doodle eight = fix::figure_eight();
  CHECK(map_isomorphic(eight, mirrored(eight)));
  CHECK(map_isomorphic(eight, relabeled(eight, rng)));

  Doodle curlD = fix::curl();
  CHECK(map_isomorphic(curlD, mirrored(curlD)));
  CHECK(!map_isomorphic(eight, curlD));  // same map, different outer face
  CHECK(!map_isomorphic(eight, fix::two_circle_lens()));

  Doodle tre = fix::trefoil_shadow();
  CHECK(map_isomorphic(tre, relabeled(tre, rng)));
  CHECK(map_isomorphic(tre, mirrored(tre)));
}

TEST_CASE("isomorphism is an equivalence relation on a small corpus") {
  std::mt19937_64 rng(13);
  std::vector<Doodle> corpus = {fix::circle(),        fix::figure_eight(),
                                fix::curl(),          fix::two_circle_lens(),
                                fix::trefoil_shadow(), fix::octahedron()};
  std::vector<Doodle> shuffled;
  for (const auto& d : corpus) shuffled.push_back(relabeled(d, rng));
  for (size_t i = 0; i < corpus.size(); ++i) {
    CHECK(map_isomorphic(corpus[i], corpus[i]));  // reflexive
    for (size_t j = 0; j < corpus.size(); ++j) {
      bool ab = map_isomorphic(corpus[i], corpus[j]);
      bool ba = map_isomorphic(corpus[j], corpus[i]);
      CHECK(ab == ba);  // symmetric
      // transitivity through the relabeled copies
      if (ab && map_isomorphic(corpus[j], shuffled[j]))
        CHECK(map_isomorphic(corpus[i], shuffled[j]));
    }
    CHECK(map_isomorphic(corpus[i], shuffled[i]));
  }
  // all six are pairwise distinct
  for (size_t i = 0; i < corpus.size(); ++i)
    for (size_t j = i + 1; j < corpus.size(); ++j)
      CHECK(!map_isomorphic(corpus[i], corpus[j]));
}

TEST_CASE("component_isomorphism returns a usable dart bijection") {
  std::mt19937_64 rng(99);
  Doodle tre = fix::trefoil_shadow();
  Doodle shuf = relabeled(tre, rng);
  bool usedMirror = false;
  auto iso = component_isomorphism(tre.map, tre.outerFaceRep[0], shuf.map,
                                   shuf.outerFaceRep[0], true, &usedMirror);
  REQUIRE(iso.has_value());
  const auto& f = *iso;
  for (DartId x : tre.map.darts()) {
    if (!usedMirror) CHECK(f[tre.map.sigma(x)] == shuf.map.sigma(f[x]));
    CHECK(f[tre.map.alpha(x)] == shuf.map.alpha(f[x]));
  }
}

TEST_CASE("text format round-trip") {
  for (const Doodle& d : {fix::figure_eight(), fix::curl(), fix::two_circle_lens(),
                          fix::trefoil_shadow(), fix::octahedron()}) {
    std::string text = serialize_doodle(d);
    Doodle back = parse_doodle_string(text);
    CHECK(validate(back).ok);
    CHECK(map_isomorphic(d, back));
    // serialization is deterministic
    CHECK(serialize_doodle(back) == text);
  }
}

TEST_CASE("text format: documented example with nesting") {
  std::string text = R"(# circle inside one lobe of a figure-eight
vertex v d0 d1 d2 d3
edge a d0 d1
edge b d2 d3
outer 1
freeloop inner in 0:0
)";
  Doodle d = parse_doodle_string(text);
  CHECK(validate(d).ok);
  CHECK(d.n() == 1);
  REQUIRE(d.freeLoops.size() == 1);
  CHECK(d.freeLoops[0].in.kind == Containment::Kind::Face);
  Doodle plain = fix::figure_eight();
  CHECK(!map_isomorphic(d, plain));  // the nested circle matters
}

TEST_CASE("parse errors carry line numbers") {
  auto expectError = [](const std::string& text, const std::string& needle) {
    try {
      parse_doodle_string(text, "t");
      FAIL("expected parse error");
    } catch (const MapError& e) {
      std::string what = e.what();
      CHECK(what.find(needle) != std::string::npos);
    }
  };
  expectError("vertex v d0 d1 d2\n", "t:1");
  expectError("vertex v d0 d1 d2 d3\nedge a d0 d1\nedge b d2 d3\nouter 9\n", "t:4");
  expectError("bogus x\n", "t:1");
  expectError("vertex v d0 d1 d2 d3\nedge a d0 d1\n", "no edge");
}

TEST_CASE("strand/relabeling equivariance") {
  std::mt19937_64 rng(4242);
  for (const Doodle& d : {fix::two_circle_lens(), fix::trefoil_shadow()}) {
    Doodle r = relabeled(d, rng);
    CHECK(strands(d).size() == strands(r).size());
    std::multiset<size_t> a, b;
    for (auto& s : strands(d)) a.insert(s.size());
    for (auto& s : strands(r)) b.insert(s.size());
    CHECK(a == b);
  }
}
