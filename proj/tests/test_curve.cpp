#include <cmath>
#include <random>

#include "doctest.h"
#include "doodle/canonical.hpp"
#include "doodle/curve.hpp"
#include "doodle/svg.hpp"
#include "fixtures.hpp"

using namespace doodle;

namespace {

PiecewiseCurve circle_curve(Vec2d center, double r, bool ccw = true) {
  PiecewiseCurve c;
  double s = ccw ? M_PI / 2 : -M_PI / 2;
  for (int i = 0; i < 4; ++i)
    c.segments.push_back(Segment::arc(center, r, (ccw ? 1 : -1) * i * M_PI / 2, s));
  return c;
}

PiecewiseCurve stadium() {
  // Two half circles joined by two straight sides, all turning the same way.
  PiecewiseCurve c;
  c.segments.push_back(Segment::line({0, 0}, {2, 0}));
  c.segments.push_back(Segment::arc({2, 1}, 1, -M_PI / 2, M_PI));
  c.segments.push_back(Segment::line({2, 2}, {0, 2}));
  c.segments.push_back(Segment::arc({0, 1}, 1, M_PI / 2, M_PI));
  return c;
}

// The S-shaped cubic with the analytically known single curvature sign
// change: control points (0,0),(1,2),(2,-2),(3,0); cross(B',B'') = 108(2t-1).
Segment s_cubic() {
  return Segment::cubic({0, 0}, {1, 2}, {2, -2}, {3, 0});
}

// Closed curve containing the S-cubic: both cubic end tangents point along
// atan2(2,1), so a single clockwise arc chain closes it up.
PiecewiseCurve closed_s_curve() {
  PiecewiseCurve c;
  Segment sc = s_cubic();
  c.segments.push_back(sc);
  double tan0 = std::atan2(2.0, 1.0);
  std::optional<std::vector<Segment>> back;
  for (double f1 : {0.5, 0.3, 0.7})
    for (double R : {1.0, 2.0, 0.5}) {
      double f3 = 1.4 - f1;
      back = solve_arc_chain(
          {3, 0}, tan0, {0, 0},
          {ChainPiece::arc(-M_PI * f1, 0), ChainPiece::straight(0.5),
           ChainPiece::arc_fixed(-M_PI * 0.6, R), ChainPiece::straight(0.5),
           ChainPiece::arc(-M_PI * f3, 1)});
      if (back) return [&] {
        for (auto& s : *back) c.segments.push_back(s);
        return c;
      }();
    }
  REQUIRE(back.has_value());
  for (auto& s : *back) c.segments.push_back(s);
  return c;
}

PiecewiseCurve figure_eight_curve() {
  PiecewiseCurve c;
  auto lobeL = teardrop({0, 0}, 3 * M_PI / 4, 3 * M_PI / 2, 1.0);
  auto lobeR = teardrop({0, 0}, M_PI / 4, -3 * M_PI / 2, 1.0);
  REQUIRE(lobeL.has_value());
  REQUIRE(lobeR.has_value());
  for (auto& s : *lobeL) c.segments.push_back(s);
  for (auto& s : *lobeR) c.segments.push_back(s);
  return c;
}

std::mt19937_64 g_rng(20240);

// True when every curvature-sign root of every cubic keeps a healthy distance
// from the piece boundaries, so the inflection count is numerically stable
// under exact similarities.
bool generic_enough(const PiecewiseCurve& c) {
  for (const auto& s : c.segments) {
    if (s.kind != Segment::Kind::Cubic) continue;
    Vec2d a0 = 3 * (s.c1 - s.a);
    Vec2d a1 = 6 * (s.c2 - 2 * s.c1 + s.a);
    Vec2d a2 = 3 * (s.b - 3 * s.c2 + 3 * s.c1 - s.a);
    double A = -cross2<double>(a2, a1);
    double B = 2 * cross2<double>(a0, a2);
    double C = cross2<double>(a1, a0);
    double mag = std::max({std::abs(A), std::abs(B), std::abs(C), 1e-12});
    auto endsValue = [&](double t) { return std::abs((A * t + B) * t + C); };
    if (endsValue(0.0) < 1e-3 * mag || endsValue(1.0) < 1e-3 * mag) return false;
    if (std::abs(A) > 1e-9 * mag) {
      double disc = B * B - 4 * A * C;
      if (std::abs(disc) < 1e-3 * mag * mag) return false;  // near-double root
      if (disc > 0) {
        double sq = std::sqrt(disc);
        for (double r : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
          if (r > -0.02 && r < 1.02 && (r < 0.02 || r > 0.98)) return false;
      }
    }
  }
  return true;
}

// Closed C1 random curve: Catmull-Rom style cubics through noisy circle points.
PiecewiseCurve random_closed_curve() {
  for (int attempt = 0; attempt < 100; ++attempt) {
    int m = 6 + static_cast<int>(g_rng() % 5);
    std::uniform_real_distribution<double> noise(-0.25, 0.25);
    std::vector<Vec2d> pts;
    for (int i = 0; i < m; ++i) {
      double a = 2 * M_PI * i / m;
      double r = 1.0 + noise(g_rng);
      pts.push_back({r * std::cos(a), r * std::sin(a)});
    }
    PiecewiseCurve c;
    for (int i = 0; i < m; ++i) {
      Vec2d p0 = pts[i], p1 = pts[(i + 1) % m];
      Vec2d t0 = (pts[(i + 1) % m] - pts[(i + m - 1) % m]) / 2.0;
      Vec2d t1 = (pts[(i + 2) % m] - pts[i]) / 2.0;
      c.segments.push_back(Segment::cubic(p0, p0 + t0 / 3.0, p1 - t1 / 3.0, p1));
    }
    if (generic_enough(c)) return c;
  }
  FAIL("could not generate a generic random curve");
  return {};
}

}  // namespace

TEST_CASE("signed curvature closed forms") {
  Segment l = Segment::line({0, 0}, {3, 4});
  for (double t : {0.0, 0.3, 1.0}) CHECK(signed_curvature(l, t) == 0.0);

  Segment ccw = Segment::arc({0, 0}, 2.0, 0.0, M_PI / 2);
  CHECK(signed_curvature(ccw, 0.5) == doctest::Approx(0.5));
  Segment cw = Segment::arc({0, 0}, 2.0, 0.0, -M_PI / 2);
  CHECK(signed_curvature(cw, 0.5) == doctest::Approx(-0.5));

  // S-cubic: cross term 108(2t-1) vanishes exactly at t = 1/2.
  Segment sc = s_cubic();
  CHECK(signed_curvature(sc, 0.25) < 0);
  CHECK(signed_curvature(sc, 0.75) > 0);
  CHECK(std::abs(signed_curvature(sc, 0.5)) < 1e-12);
  Vec2d v = sc.velocity(0.0), a = sc.acceleration(0.0);
  CHECK(cross2<double>(v, a) == doctest::Approx(-108.0));
}

namespace {

// Independent finite-difference curvature oracle: evaluates the Bezier in
// long double from the raw control points and combines two central-difference
// step sizes (Richardson) to kill the h^2 truncation term.
long double fd_curvature(const Segment& c, long double t) {
  long double px[4] = {c.a.x(), c.c1.x(), c.c2.x(), c.b.x()};
  long double py[4] = {c.a.y(), c.c1.y(), c.c2.y(), c.b.y()};
  auto eval = [&](long double s, long double* x, long double* y) {
    long double u = 1.0L - s;
    *x = u * u * u * px[0] + 3 * u * u * s * px[1] + 3 * u * s * s * px[2] + s * s * s * px[3];
    *y = u * u * u * py[0] + 3 * u * u * s * py[1] + 3 * u * s * s * py[2] + s * s * s * py[3];
  };
  auto kappa = [&](long double h) {
    long double xm, ym, x0, y0, xp, yp;
    eval(t - h, &xm, &ym);
    eval(t, &x0, &y0);
    eval(t + h, &xp, &yp);
    long double dx = (xp - xm) / (2 * h), dy = (yp - ym) / (2 * h);
    long double ddx = (xp - 2 * x0 + xm) / (h * h), ddy = (yp - 2 * y0 + ym) / (h * h);
    long double speed = std::sqrt(dx * dx + dy * dy);
    return (dx * ddy - dy * ddx) / (speed * speed * speed);
  };
  long double h = 1e-4L;
  return (4.0L * kappa(h) - kappa(2 * h)) / 3.0L;
}

}  // namespace

TEST_CASE("closed-form curvature matches finite differences on cubics") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int rep = 0; rep < 10; ++rep) {
    Segment c = Segment::cubic({u(rng), u(rng)}, {u(rng), u(rng)}, {u(rng), u(rng)},
                               {u(rng), u(rng)});
    int checked = 0;
    for (int i = 1; i < 1000; ++i) {
      double t = i / 1000.0;
      if (c.velocity(t).norm() < 0.3) continue;  // skip near-singular spots
      double kfd = static_cast<double>(fd_curvature(c, t));
      double kcf = signed_curvature(c, t);
      if (std::abs(kcf) < 1e-3) continue;  // relative error needs a scale
      CHECK(std::abs(kfd - kcf) <= 1e-6 * std::abs(kcf));
      ++checked;
    }
    CHECK(checked > 500);
  }
}

TEST_CASE("count_inflections: circle and stadium have none") {
  CHECK(count_inflections(circle_curve({0, 0}, 1.5)).total == 0);
  CHECK(count_inflections(circle_curve({2, 1}, 0.5, false)).total == 0);
  CHECK(count_inflections(stadium()).total == 0);  // zero runs flanked by same sign
}

TEST_CASE("count_inflections: closed S-curve, cubic segment tallies one") {
  PiecewiseCurve c = closed_s_curve();
  auto rep = count_inflections(c);
  CHECK(rep.total == 2);  // closed curves change sign an even number of times
  CHECK(rep.perSegment[0] == 1);
  REQUIRE(!rep.locations.empty());
  bool onCubic = false;
  for (const auto& loc : rep.locations)
    if (loc.segment == 0) {
      onCubic = true;
      CHECK(loc.t == doctest::Approx(0.5).epsilon(0.05));
    }
  CHECK(onCubic);
}

TEST_CASE("figure-eight curve from two teardrops") {
  PiecewiseCurve c = figure_eight_curve();
  check_curve(c);
  auto rep = count_inflections(c);
  CHECK(rep.total == 2);

  auto inter = self_intersections({c});
  CHECK(inter.crossings.size() == 1);

  auto rec = reconstruct_map({c});
  CHECK(rec.doodle.n() == 1);
  CHECK(map_isomorphic(rec.doodle, fix::figure_eight()));
}

TEST_CASE("teardrop loops have single-sign curvature") {
  for (double turn : {3 * M_PI / 2, -3 * M_PI / 2, 1.8 * M_PI, -1.2 * M_PI}) {
    auto loop = teardrop({1, 2}, 0.3, turn, 0.7);
    REQUIRE(loop.has_value());
    for (const auto& s : *loop) {
      if (s.kind == Segment::Kind::Arc)
        CHECK(signed_curvature(s, 0.5) * turn > 0);
    }
    // chain closes and turns by exactly `turn`ups
    Vec2d start = loop->front().point(0), end = loop->back().point(1);
    CHECK((start - end).norm() < 1e-9);
  }
}

TEST_CASE("self_intersections: disjoint and nested circles") {
  auto inter = self_intersections({circle_curve({0, 0}, 1), circle_curve({5, 0}, 1)});
  CHECK(inter.crossings.empty());

  auto rec = reconstruct_map(
      {circle_curve({0, 0}, 3), circle_curve({0, 0}, 2), circle_curve({0, 0}, 1)});
  CHECK(rec.doodle.n() == 0);
  REQUIRE(rec.doodle.freeLoops.size() == 3);
  // innermost inside middle inside outer
  Doodle expect;
  expect.freeLoops.push_back({"a", Containment::root()});
  expect.freeLoops.push_back({"b", Containment::in_free_loop(0)});
  expect.freeLoops.push_back({"c", Containment::in_free_loop(1)});
  CHECK(map_isomorphic(rec.doodle, expect));
}

TEST_CASE("self_intersections: two overlapping circles give the lens doodle") {
  auto rec = reconstruct_map({circle_curve({-0.6, 0}, 1), circle_curve({0.6, 0}, 1)});
  CHECK(rec.doodle.n() == 2);
  CHECK(map_isomorphic(rec.doodle, fix::two_circle_lens()));
}

TEST_CASE("tangential contact is a non-generic-drawing error") {
  CHECK_THROWS_AS(
      self_intersections({circle_curve({0, 0}, 1), circle_curve({2.0, 0}, 1)}),
      GeometryError);
}

TEST_CASE("inflection count is invariant under similarities") {
  for (int rep = 0; rep < 50; ++rep) {
    PiecewiseCurve c = random_closed_curve();
    int base = count_inflections(c).total;
    std::uniform_real_distribution<double> u(-3, 3);
    Similarity rot{1.0, u(g_rng), {u(g_rng), u(g_rng)}, false};
    Similarity refl{1.0, u(g_rng), {u(g_rng), u(g_rng)}, true};
    Similarity scale{0.1 + std::abs(u(g_rng)), 0.0, {0, 0}, false};
    CHECK(count_inflections(transformed(c, rot)).total == base);
    CHECK(count_inflections(transformed(c, refl)).total == base);
    CHECK(count_inflections(transformed(c, scale)).total == base);
  }
}

TEST_CASE("SVG export is deterministic and well formed") {
  PiecewiseCurve c = figure_eight_curve();
  auto rep = count_inflections(c);
  SvgAnnotations ann;
  for (const auto& loc : rep.locations) ann.inflectionMarkers.push_back(loc.point);
  std::string svg1 = export_svg({c}, ann);
  std::string svg2 = export_svg({c}, ann);
  CHECK(svg1 == svg2);
  CHECK(svg1.find("<svg") != std::string::npos);
  CHECK(svg1.find("path") != std::string::npos);
  CHECK(std::count(svg1.begin(), svg1.end(), '\n') > 3);
  // one marker per inflection
  size_t markers = 0, pos = 0;
  while ((pos = svg1.find("<circle", pos)) != std::string::npos) {
    ++markers;
    pos += 7;
  }
  CHECK(markers == static_cast<size_t>(rep.total));

  std::string empty = export_svg({});
  CHECK(empty.find("<svg") != std::string::npos);
}
