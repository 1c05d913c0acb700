#include "doodle/curve.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace doodle {

Segment Segment::line(Vec2d a, Vec2d b, DartId dart) {
  Segment s;
  s.kind = Kind::Line;
  s.a = a;
  s.b = b;
  s.dart = dart;
  return s;
}

Segment Segment::arc(Vec2d center, double radius, double startAngle, double sweep,
                     DartId dart) {
  Segment s;
  s.kind = Kind::Arc;
  s.center = center;
  s.radius = radius;
  s.startAngle = startAngle;
  s.sweep = sweep;
  s.dart = dart;
  s.a = center + radius * unit_dir(startAngle);
  s.b = center + radius * unit_dir(startAngle + sweep);
  return s;
}

Segment Segment::cubic(Vec2d p0, Vec2d p1, Vec2d p2, Vec2d p3, DartId dart) {
  Segment s;
  s.kind = Kind::Cubic;
  s.a = p0;
  s.c1 = p1;
  s.c2 = p2;
  s.b = p3;
  s.dart = dart;
  return s;
}

Vec2d Segment::point(double t) const {
  switch (kind) {
    case Kind::Line:
      return a + t * (b - a);
    case Kind::Arc:
      return center + radius * unit_dir(startAngle + t * sweep);
    case Kind::Cubic: {
      double u = 1 - t;
      return u * u * u * a + 3 * u * u * t * c1 + 3 * u * t * t * c2 + t * t * t * b;
    }
  }
  return a;
}

Vec2d Segment::velocity(double t) const {
  switch (kind) {
    case Kind::Line:
      return b - a;
    case Kind::Arc: {
      double th = startAngle + t * sweep;
      return radius * sweep * Vec2d(-std::sin(th), std::cos(th));
    }
    case Kind::Cubic: {
      double u = 1 - t;
      return 3 * (u * u * (c1 - a) + 2 * u * t * (c2 - c1) + t * t * (b - c2));
    }
  }
  return Vec2d::Zero();
}

Vec2d Segment::acceleration(double t) const {
  switch (kind) {
    case Kind::Line:
      return Vec2d::Zero();
    case Kind::Arc: {
      double th = startAngle + t * sweep;
      return -radius * sweep * sweep * unit_dir(th);
    }
    case Kind::Cubic: {
      double u = 1 - t;
      return 6 * (u * (c2 - 2 * c1 + a) + t * (b - 2 * c2 + c1));
    }
  }
  return Vec2d::Zero();
}

Vec2d Segment::tangent(double t) const {
  Vec2d v = velocity(t);
  double n = v.norm();
  if (n == 0) throw GeometryError("degenerate segment: zero speed");
  return v / n;
}

double Segment::length_estimate() const {
  switch (kind) {
    case Kind::Line:
      return (b - a).norm();
    case Kind::Arc:
      return radius * std::abs(sweep);
    case Kind::Cubic: {
      double s = 0;
      Vec2d prev = a;
      for (int i = 1; i <= 16; ++i) {
        Vec2d p = point(i / 16.0);
        s += (p - prev).norm();
        prev = p;
      }
      return s;
    }
  }
  return 0;
}

double signed_curvature(const Segment& seg, double t) {
  switch (seg.kind) {
    case Segment::Kind::Line:
      return 0.0;
    case Segment::Kind::Arc:
      if (seg.radius <= 0) throw GeometryError("arc with nonpositive radius");
      return (seg.sweep >= 0 ? 1.0 : -1.0) / seg.radius;
    case Segment::Kind::Cubic: {
      Vec2d v = seg.velocity(t), acc = seg.acceleration(t);
      double speed = v.norm();
      if (speed < 1e-12) throw GeometryError("cubic is irregular at t=" + std::to_string(t));
      return cross2<double>(v, acc) / (speed * speed * speed);
    }
  }
  return 0.0;
}

void check_curve(const PiecewiseCurve& c, const CurveTolerances& tol) {
  if (c.segments.empty()) throw GeometryError("empty curve");
  double scale = 0;
  for (const auto& s : c.segments) scale = std::max(scale, s.length_estimate());
  double joinTol = std::max(tol.eps, 1e-12 * scale) * 10;
  for (size_t i = 0; i < c.segments.size(); ++i) {
    const Segment& s = c.segments[i];
    const Segment& n = c.segments[(i + 1) % c.segments.size()];
    if ((s.point(1.0) - n.point(0.0)).norm() > joinTol)
      throw GeometryError("segments " + std::to_string(i) + " and next do not chain");
    Vec2d t1 = s.tangent(1.0), t2 = n.tangent(0.0);
    if (std::abs(norm_angle(angle_of(t2) - angle_of(t1))) > tol.angularEps * 10 + 1e-9)
      throw GeometryError("curve is not C1 at joint " + std::to_string(i));
    for (double t : {0.0, 0.25, 0.5, 0.75, 1.0})
      if (s.velocity(t).norm() < 1e-12)
        throw GeometryError("segment " + std::to_string(i) + " is irregular");
  }
}

namespace {

struct Atom {
  int sign = 0;
  int seg = 0;
  double t0 = 0, t1 = 1;
};

// Curvature-sign atoms of one segment, in parameter order.
void atoms_of(const Segment& s, int segIndex, std::vector<Atom>& out) {
  switch (s.kind) {
    case Segment::Kind::Line:
      out.push_back({0, segIndex, 0, 1});
      return;
    case Segment::Kind::Arc:
      out.push_back({s.sweep > 0 ? 1 : (s.sweep < 0 ? -1 : 0), segIndex, 0, 1});
      return;
    case Segment::Kind::Cubic: {
      // cross(B', B'') is quadratic in t for a cubic piece:
      // with B'(t) = a2 t^2 + a1 t + a0,
      // cross(B', B'') = -cross(a2, a1) t^2 + 2 cross(a0, a2) t + cross(a0, a1).
      Vec2d a0 = 3 * (s.c1 - s.a);
      Vec2d a1 = 6 * (s.c2 - 2 * s.c1 + s.a);
      Vec2d a2 = 3 * (s.b - 3 * s.c2 + 3 * s.c1 - s.a);
      double A = -cross2<double>(a2, a1);
      double B = 2 * cross2<double>(a0, a2);
      double C = cross2<double>(a0, a1);
      double mag = std::max({std::abs(A), std::abs(B), std::abs(C)});
      double zero = mag * 1e-12 + 1e-300;
      std::vector<double> cuts{0.0, 1.0};
      if (std::abs(A) > zero) {
        double disc = B * B - 4 * A * C;
        if (disc > 0) {
          double sq = std::sqrt(disc);
          for (double r : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)})
            if (r > 1e-9 && r < 1 - 1e-9) cuts.push_back(r);
        }
      } else if (std::abs(B) > zero) {
        double r = -C / B;
        if (r > 1e-9 && r < 1 - 1e-9) cuts.push_back(r);
      }
      std::sort(cuts.begin(), cuts.end());
      for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        double mid = 0.5 * (cuts[i] + cuts[i + 1]);
        double val = (A * mid + B) * mid + C;
        int sg = std::abs(val) <= zero ? 0 : (val > 0 ? 1 : -1);
        out.push_back({sg, segIndex, cuts[i], cuts[i + 1]});
      }
      return;
    }
  }
}

}  // namespace

InflectionReport count_inflections(const PiecewiseCurve& c, const CurveTolerances& tol) {
  check_curve(c, tol);
  InflectionReport rep;
  rep.perSegment.assign(c.segments.size(), 0);

  std::vector<Atom> atoms;
  for (size_t i = 0; i < c.segments.size(); ++i)
    atoms_of(c.segments[i], static_cast<int>(i), atoms);

  std::vector<size_t> signedIdx;
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i].sign != 0) signedIdx.push_back(i);
  if (signedIdx.size() < 2) return rep;

  for (size_t k = 0; k < signedIdx.size(); ++k) {
    size_t i = signedIdx[k];
    size_t j = signedIdx[(k + 1) % signedIdx.size()];
    if (atoms[i].sign == atoms[j].sign) continue;
    // Locate the inflection at the middle of the zero run between the two
    // signed atoms (at the joint when they are adjacent).
    size_t gap = (j + atoms.size() - i) % atoms.size();
    size_t midAtom = (i + (gap + 1) / 2) % atoms.size();
    const Atom& loc = atoms[midAtom];
    InflectionLocation il;
    il.segment = loc.seg;
    il.t = (gap <= 1) ? loc.t0 : 0.5 * (loc.t0 + loc.t1);
    il.point = c.segments[loc.seg].point(il.t);
    il.dart = c.segments[loc.seg].dart;
    rep.locations.push_back(il);
    rep.perSegment[loc.seg]++;
    rep.perDart[il.dart]++;
    rep.total++;
  }
  return rep;
}

int total_inflections(const std::vector<PiecewiseCurve>& curves, const CurveTolerances& tol) {
  int total = 0;
  for (const auto& c : curves) total += count_inflections(c, tol).total;
  return total;
}

std::vector<Vec2d> flatten_segment(const Segment& seg, double sag) {
  std::vector<Vec2d> pts;
  switch (seg.kind) {
    case Segment::Kind::Line:
      pts = {seg.point(0), seg.point(1)};
      break;
    case Segment::Kind::Arc: {
      double r = seg.radius;
      double maxStep = (sag >= r) ? M_PI / 2 : 2 * std::acos(std::max(-1.0, 1 - sag / r));
      maxStep = std::max(maxStep, 1e-3);
      int n = std::max(1, static_cast<int>(std::ceil(std::abs(seg.sweep) / maxStep)));
      for (int i = 0; i <= n; ++i) pts.push_back(seg.point(static_cast<double>(i) / n));
      break;
    }
    case Segment::Kind::Cubic: {
      struct Span {
        double t0, t1;
      };
      std::vector<Span> stack{{0, 1}};
      std::vector<std::pair<double, Vec2d>> acc{{0.0, seg.point(0)}};
      while (!stack.empty()) {
        Span s = stack.back();
        stack.pop_back();
        Vec2d p0 = seg.point(s.t0), p1 = seg.point(s.t1);
        Vec2d pm = seg.point(0.5 * (s.t0 + s.t1));
        double d2 = segment_dist2<double>(p0, p1, pm);
        if (d2 <= sag * sag || s.t1 - s.t0 < 1e-4) {
          acc.push_back({s.t1, p1});
        } else {
          double tm = 0.5 * (s.t0 + s.t1);
          stack.push_back({tm, s.t1});
          stack.push_back({s.t0, tm});
        }
      }
      std::sort(acc.begin(), acc.end(),
                [](const auto& x, const auto& y) { return x.first < y.first; });
      for (auto& [t, p] : acc) pts.push_back(p);
      break;
    }
  }
  return pts;
}

double drawing_scale(const std::vector<PiecewiseCurve>& curves) {
  double lox = 1e300, loy = 1e300, hix = -1e300, hiy = -1e300;
  for (const auto& c : curves)
    for (const auto& s : c.segments)
      for (double t : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        Vec2d p = s.point(t);
        lox = std::min(lox, p.x());
        hix = std::max(hix, p.x());
        loy = std::min(loy, p.y());
        hiy = std::max(hiy, p.y());
      }
  if (hix < lox) return 1.0;
  return std::max(1e-12, std::hypot(hix - lox, hiy - loy));
}

namespace {

// Intersections of two pieces as parameter pairs.  Closed forms for
// line/arc combinations; Newton from flattening seeds when cubics appear.
std::vector<std::pair<double, double>> intersect_pieces(
    const Segment& s1, const Segment& s2,
    const std::vector<std::pair<double, double>>& seeds) {
  std::vector<std::pair<double, double>> out;
  auto push = [&](double t1, double t2) {
    if (t1 < -1e-9 || t1 > 1 + 1e-9 || t2 < -1e-9 || t2 > 1 + 1e-9) return;
    t1 = std::clamp(t1, 0.0, 1.0);
    t2 = std::clamp(t2, 0.0, 1.0);
    for (auto& [u1, u2] : out)
      if (std::abs(u1 - t1) < 1e-7 && std::abs(u2 - t2) < 1e-7) return;
    out.push_back({t1, t2});
  };

  auto arcParam = [&](const Segment& a, const Vec2d& p) {
    double ang = angle_of(p - a.center);
    double best = 1e9;
    for (double shift : {0.0, 2 * M_PI, -2 * M_PI}) {
      double t = (norm_angle(ang - a.startAngle) + shift) / a.sweep;
      if (t >= -1e-9 && t <= 1 + 1e-9) best = t;
    }
    return best;
  };

  auto lineLine = [&](const Segment& l1, const Segment& l2) {
    Vec2d r = l1.b - l1.a, s = l2.b - l2.a;
    double den = cross2<double>(r, s);
    if (std::abs(den) < 1e-14 * r.norm() * s.norm()) return;
    Vec2d d = l2.a - l1.a;
    push(cross2<double>(d, s) / den, cross2<double>(d, r) / den);
  };
  auto lineArc = [&](const Segment& l, const Segment& a, bool swapped) {
    Vec2d d = l.b - l.a, f = l.a - a.center;
    double A = d.squaredNorm();
    double B = 2 * f.dot(d);
    double C = f.squaredNorm() - a.radius * a.radius;
    double disc = B * B - 4 * A * C;
    if (disc < 0) return;
    double sq = std::sqrt(disc);
    for (double tl : {(-B - sq) / (2 * A), (-B + sq) / (2 * A)}) {
      if (tl < -1e-9 || tl > 1 + 1e-9) continue;
      Vec2d p = l.point(std::clamp(tl, 0.0, 1.0));
      double ta = arcParam(a, p);
      if (ta > 1e8) continue;
      if (swapped)
        push(ta, tl);
      else
        push(tl, ta);
    }
  };
  auto arcArc = [&](const Segment& a1, const Segment& a2) {
    Vec2d d = a2.center - a1.center;
    double dist = d.norm();
    double r1 = a1.radius, r2 = a2.radius;
    if (dist < 1e-14) return;
    double x = (dist * dist - r2 * r2 + r1 * r1) / (2 * dist);
    double h2 = r1 * r1 - x * x;
    if (h2 < -1e-12 * r1 * r1) return;
    double h = std::sqrt(std::max(0.0, h2));
    Vec2d u = d / dist;
    for (double sgn : {1.0, -1.0}) {
      Vec2d p = a1.center + x * u + sgn * h * rot90(u);
      double t1 = arcParam(a1, p), t2 = arcParam(a2, p);
      if (t1 < 1e8 && t2 < 1e8) push(t1, t2);
      if (h < 1e-14) break;
    }
  };
  auto newton = [&](double t1, double t2) {
    for (int it = 0; it < 50; ++it) {
      Vec2d F = s1.point(std::clamp(t1, 0.0, 1.0)) - s2.point(std::clamp(t2, 0.0, 1.0));
      Vec2d v1 = s1.velocity(std::clamp(t1, 0.0, 1.0));
      Vec2d v2 = s2.velocity(std::clamp(t2, 0.0, 1.0));
      double den = cross2<double>(v1, -v2);
      if (std::abs(den) < 1e-18) return;
      double dt1 = -cross2<double>(F, -v2) / den;
      double dt2 = -cross2<double>(v1, F) / den;
      t1 += dt1;
      t2 += dt2;
      if (std::abs(dt1) + std::abs(dt2) < 1e-14) break;
    }
    if ((s1.point(std::clamp(t1, 0.0, 1.0)) - s2.point(std::clamp(t2, 0.0, 1.0))).norm() <
        1e-9)
      push(t1, t2);
  };

  bool c1 = s1.kind == Segment::Kind::Cubic, c2 = s2.kind == Segment::Kind::Cubic;
  if (!c1 && !c2) {
    if (s1.kind == Segment::Kind::Line && s2.kind == Segment::Kind::Line)
      lineLine(s1, s2);
    else if (s1.kind == Segment::Kind::Line)
      lineArc(s1, s2, false);
    else if (s2.kind == Segment::Kind::Line)
      lineArc(s2, s1, true);
    else
      arcArc(s1, s2);
  } else {
    for (auto& [t1, t2] : seeds) newton(t1, t2);
  }
  return out;
}

struct Incidence {
  int curve, seg;
  double t;
};

}  // namespace

IntersectionReport self_intersections(const std::vector<PiecewiseCurve>& curves,
                                      const CurveTolerances& tol) {
  IntersectionReport rep;
  double scale = drawing_scale(curves);
  double sag = std::max(tol.eps, 1e-7 * scale);
  double clusterTol = std::max(100 * tol.eps, 1e-6 * scale);

  struct FlatPiece {
    int curve, seg;
    std::vector<Vec2d> pts;
    Vec2d lo, hi;
  };
  std::vector<FlatPiece> flats;
  for (size_t ci = 0; ci < curves.size(); ++ci)
    for (size_t si = 0; si < curves[ci].segments.size(); ++si) {
      FlatPiece f;
      f.curve = static_cast<int>(ci);
      f.seg = static_cast<int>(si);
      f.pts = flatten_segment(curves[ci].segments[si], sag);
      f.lo = f.hi = f.pts[0];
      for (const auto& p : f.pts) {
        f.lo = f.lo.cwiseMin(p);
        f.hi = f.hi.cwiseMax(p);
      }
      flats.push_back(std::move(f));
    }

  struct RawHit {
    int c1, s1, c2, s2;
    double t1, t2;
    Vec2d p;
  };
  std::vector<RawHit> hits;
  double pad = clusterTol;
  for (size_t i = 0; i < flats.size(); ++i) {
    for (size_t j = i; j < flats.size(); ++j) {
      const FlatPiece &A = flats[i], &B = flats[j];
      bool sameCurve = A.curve == B.curve;
      if (sameCurve && A.seg == B.seg) continue;
      int nseg = static_cast<int>(curves[A.curve].segments.size());
      bool adjacent =
          sameCurve && ((A.seg + 1) % nseg == B.seg || (B.seg + 1) % nseg == A.seg);
      if ((A.lo.x() > B.hi.x() + pad) || (B.lo.x() > A.hi.x() + pad) ||
          (A.lo.y() > B.hi.y() + pad) || (B.lo.y() > A.hi.y() + pad))
        continue;
      const Segment& segA = curves[A.curve].segments[A.seg];
      const Segment& segB = curves[B.curve].segments[B.seg];
      bool needSeeds = segA.kind == Segment::Kind::Cubic || segB.kind == Segment::Kind::Cubic;
      std::vector<std::pair<double, double>> seeds;
      if (needSeeds) {
        for (size_t u = 0; u + 1 < A.pts.size(); ++u)
          for (size_t v = 0; v + 1 < B.pts.size(); ++v) {
            if (!segments_intersect<double>(A.pts[u], A.pts[u + 1], B.pts[v], B.pts[v + 1]))
              continue;
            seeds.push_back({(u + 0.5) / (A.pts.size() - 1), (v + 0.5) / (B.pts.size() - 1)});
          }
        if (seeds.empty()) continue;
      }
      auto ts = intersect_pieces(segA, segB, seeds);
      if (ts.empty() && !adjacent) {
        // Near-miss detection: pieces whose flat polylines approach within eps
        // without crossing are flagged.
        double best2 = 1e300;
        for (size_t u = 0; u + 1 < A.pts.size(); ++u)
          for (const Vec2d& q : B.pts)
            best2 = std::min(best2, segment_dist2<double>(A.pts[u], A.pts[u + 1], q));
        if (best2 < tol.eps * tol.eps)
          rep.warnings.push_back("tangential near-miss between pieces of curves " +
                                 std::to_string(A.curve) + " and " + std::to_string(B.curve));
        continue;
      }
      for (auto& [t1, t2] : ts) {
        Vec2d p = curves[A.curve].segments[A.seg].point(t1);
        if (adjacent) {
          bool ab = (A.seg + 1) % nseg == B.seg;
          double tEnd = ab ? 1.0 : 0.0, tStart = ab ? 0.0 : 1.0;
          if (std::abs(t1 - tEnd) < 1e-6 && std::abs(t2 - tStart) < 1e-6) continue;
        }
        hits.push_back({A.curve, A.seg, B.curve, B.seg, t1, t2, p});
      }
    }
  }

  // Clustered hits become crossings; a curve pass appearing through several
  // piece pairs (joints) is merged by closeness along the curve.
  std::vector<std::vector<Incidence>> clusters;
  std::vector<Vec2d> centers;
  auto addIncidence = [&](int cluster, Incidence inc) {
    for (auto& e : clusters[cluster]) {
      if (e.curve != inc.curve) continue;
      int nseg = static_cast<int>(curves[inc.curve].segments.size());
      double posA = e.seg + e.t, posB = inc.seg + inc.t;
      double diff = std::abs(posA - posB);
      diff = std::min(diff, nseg - diff);
      if (diff < 0.5) return;  // same pass
    }
    clusters[cluster].push_back(inc);
  };
  for (const auto& h : hits) {
    int cluster = -1;
    for (size_t k = 0; k < centers.size(); ++k)
      if ((centers[k] - h.p).norm() < clusterTol) {
        cluster = static_cast<int>(k);
        break;
      }
    if (cluster < 0) {
      clusters.push_back({});
      centers.push_back(h.p);
      cluster = static_cast<int>(clusters.size()) - 1;
    }
    addIncidence(cluster, {h.c1, h.s1, h.t1});
    addIncidence(cluster, {h.c2, h.s2, h.t2});
  }

  for (size_t k = 0; k < clusters.size(); ++k) {
    auto& cl = clusters[k];
    if (cl.size() != 2)
      throw GeometryError("crossing at (" + std::to_string(centers[k].x()) + "," +
                          std::to_string(centers[k].y()) + ") has " +
                          std::to_string(cl.size()) + " passes (non-generic drawing)");
    CrossingPoint cp;
    cp.point = centers[k];
    cp.curve1 = cl[0].curve;
    cp.seg1 = cl[0].seg;
    cp.t1 = cl[0].t;
    cp.curve2 = cl[1].curve;
    cp.seg2 = cl[1].seg;
    cp.t2 = cl[1].t;
    cp.tan1 = curves[cp.curve1].segments[cp.seg1].tangent(cp.t1);
    cp.tan2 = curves[cp.curve2].segments[cp.seg2].tangent(cp.t2);
    double ang = std::abs(norm_angle(angle_of(cp.tan2) - angle_of(cp.tan1)));
    ang = std::min(ang, M_PI - ang);
    if (ang < tol.tangentialAngle)
      throw GeometryError("tangential contact near (" + std::to_string(cp.point.x()) + "," +
                          std::to_string(cp.point.y()) + "): non-generic drawing");
    rep.crossings.push_back(cp);
  }

  std::sort(rep.crossings.begin(), rep.crossings.end(), [](const auto& a, const auto& b) {
    if (a.point.x() != b.point.x()) return a.point.x() < b.point.x();
    if (a.point.y() != b.point.y()) return a.point.y() < b.point.y();
    return std::tie(a.curve1, a.seg1) < std::tie(b.curve1, b.seg1);
  });
  return rep;
}

// ---- Map reconstruction ----

namespace {

struct Pass {
  double pos;  // seg + t along the curve
  int crossing;
  Vec2d tangent;
};

double winding_number(const std::vector<Vec2d>& poly, const Vec2d& p) {
  double total = 0;
  for (size_t i = 0; i + 1 < poly.size(); ++i) {
    Vec2d a = poly[i] - p, b = poly[i + 1] - p;
    double na = a.norm(), nb = b.norm();
    if (na < 1e-12 || nb < 1e-12) return 1.0;  // on the boundary: call it inside
    total += norm_angle(angle_of(b) - angle_of(a));
  }
  return total / (2 * M_PI);
}

double polygon_area(const std::vector<Vec2d>& poly) {
  double s = 0;
  for (size_t i = 0; i + 1 < poly.size(); ++i) s += cross2<double>(poly[i], poly[i + 1]);
  return 0.5 * s;
}

}  // namespace

ReconstructedMap reconstruct_map(const std::vector<PiecewiseCurve>& curves,
                                 const CurveTolerances& tol) {
  for (const auto& c : curves) check_curve(c, tol);
  auto inter = self_intersections(curves, tol);
  ReconstructedMap out;
  out.crossings = inter.crossings;

  std::vector<std::vector<Pass>> passes(curves.size());
  for (size_t k = 0; k < inter.crossings.size(); ++k) {
    const auto& cp = inter.crossings[k];
    passes[cp.curve1].push_back({cp.seg1 + cp.t1, static_cast<int>(k), cp.tan1});
    passes[cp.curve2].push_back({cp.seg2 + cp.t2, static_cast<int>(k), cp.tan2});
  }
  for (auto& ps : passes)
    std::sort(ps.begin(), ps.end(), [](const Pass& a, const Pass& b) { return a.pos < b.pos; });

  Doodle& d = out.doodle;
  struct ArcRec {
    int curve;
    double from, to;
    int fromCross, toCross;
    Vec2d fromTan, toTan;
  };
  std::vector<ArcRec> arcs;
  for (size_t ci = 0; ci < curves.size(); ++ci) {
    auto& ps = passes[ci];
    for (size_t i = 0; i < ps.size(); ++i) {
      const Pass& p = ps[i];
      const Pass& q = ps[(i + 1) % ps.size()];
      arcs.push_back({static_cast<int>(ci), p.pos, q.pos, p.crossing, q.crossing, p.tangent,
                      q.tangent});
    }
  }
  for (size_t k = 0; k < arcs.size(); ++k) {
    DartId f = d.map.add_dart();
    DartId b = d.map.add_dart();
    d.map.link_edge(f, b);
    int nseg = static_cast<int>(curves[arcs[k].curve].segments.size());
    double to = arcs[k].to <= arcs[k].from ? arcs[k].to + nseg : arcs[k].to;
    out.geometry[f] = {arcs[k].curve, arcs[k].from, to, true};
    out.geometry[b] = {arcs[k].curve, arcs[k].from, to, false};
  }

  std::vector<std::vector<std::pair<double, DartId>>> rays(inter.crossings.size());
  for (size_t k = 0; k < arcs.size(); ++k) {
    DartId f = static_cast<DartId>(2 * k), b = static_cast<DartId>(2 * k + 1);
    rays[arcs[k].fromCross].push_back({angle_of(arcs[k].fromTan), f});
    rays[arcs[k].toCross].push_back({angle_of(-arcs[k].toTan), b});
  }
  for (size_t v = 0; v < rays.size(); ++v) {
    auto& r = rays[v];
    if (r.size() != 4)
      throw GeometryError("crossing " + std::to_string(v) + " has " +
                          std::to_string(r.size()) + " branches");
    std::sort(r.begin(), r.end());
    std::vector<DartId> rot;
    for (auto& [ang, dart] : r) rot.push_back(dart);
    d.map.make_vertex(rot);
  }

  // Outward face per component: at the rightmost point of the component the
  // unbounded region lies left of downward travel.
  auto comp = d.map.component_of_darts();
  int ncomp = d.map.component_count();
  d.outerFaceRep.assign(ncomp, kNoDart);
  d.nesting.assign(ncomp, Containment::root());
  std::vector<double> bestX(ncomp, -1e300);
  auto walkDart = [&](DartId f, auto&& fn) {
    const auto& g = out.geometry.at(f);
    int nseg = static_cast<int>(curves[g.curve].segments.size());
    double pos = g.fromSeg;
    while (pos < g.toSeg - 1e-12) {
      int si = static_cast<int>(std::floor(pos + 1e-12)) % nseg;
      double base = std::floor(pos + 1e-12);
      double tA = pos - base;
      double tB = std::min(g.toSeg - base, 1.0);
      fn(curves[g.curve].segments[si], tA, tB);
      pos = base + tB;
    }
  };
  for (size_t k = 0; k < arcs.size(); ++k) {
    DartId f = static_cast<DartId>(2 * k);
    int c = comp[f];
    walkDart(f, [&](const Segment& s, double tA, double tB) {
      for (int step = 0; step <= 24; ++step) {
        double t = tA + (tB - tA) * step / 24.0;
        Vec2d p = s.point(t);
        if (p.x() > bestX[c]) {
          bestX[c] = p.x();
          Vec2d tan = s.tangent(t);
          d.outerFaceRep[c] = (tan.y() < 0) ? f : d.map.alpha(f);
        }
      }
    });
  }

  std::vector<int> freeLoopOfCurve(curves.size(), -1);
  for (size_t ci = 0; ci < curves.size(); ++ci) {
    if (!passes[ci].empty()) continue;
    freeLoopOfCurve[ci] = static_cast<int>(d.freeLoops.size());
    d.freeLoops.push_back({"fl" + std::to_string(d.freeLoops.size()), Containment::root()});
  }

  // Containment: the smallest bounded region whose winding number surrounds a
  // sample of the entity.
  double scale = drawing_scale(curves);
  auto faceList = d.map.faces();
  struct Region {
    bool isFreeLoop;
    int freeLoop;
    DartId faceRep;
    int component;
    std::vector<Vec2d> poly;
    double area;
  };
  std::vector<Region> regions;
  auto dartPolyline = [&](DartId x) {
    std::vector<Vec2d> fwd;
    DartId f = (x % 2 == 0) ? x : d.map.alpha(x);
    walkDart(f, [&](const Segment& s, double tA, double tB) {
      int steps = 12;
      for (int st = 0; st <= steps; ++st) fwd.push_back(s.point(tA + (tB - tA) * st / steps));
    });
    if (x % 2 != 0) std::reverse(fwd.begin(), fwd.end());
    return fwd;
  };
  std::set<DartId> outwardDarts;
  for (int c = 0; c < ncomp; ++c)
    for (DartId x : d.map.face_of(d.outerFaceRep[c])) outwardDarts.insert(x);
  for (const auto& f : faceList) {
    if (outwardDarts.count(f[0])) continue;
    Region r;
    r.isFreeLoop = false;
    r.freeLoop = -1;
    r.faceRep = f[0];
    r.component = comp[f[0]];
    for (DartId x : f) {
      auto pl = dartPolyline(x);
      r.poly.insert(r.poly.end(), pl.begin(), pl.end());
    }
    if (!r.poly.empty()) r.poly.push_back(r.poly.front());
    r.area = std::abs(polygon_area(r.poly));
    regions.push_back(std::move(r));
  }
  for (size_t ci = 0; ci < curves.size(); ++ci) {
    if (freeLoopOfCurve[ci] < 0) continue;
    Region r;
    r.isFreeLoop = true;
    r.freeLoop = freeLoopOfCurve[ci];
    r.faceRep = kNoDart;
    r.component = -1;
    for (const auto& s : curves[ci].segments) {
      auto pl = flatten_segment(s, 1e-4 * scale);
      r.poly.insert(r.poly.end(), pl.begin(), pl.end());
    }
    r.poly.push_back(r.poly.front());
    r.area = std::abs(polygon_area(r.poly));
    regions.push_back(std::move(r));
  }

  auto containerOf = [&](const Vec2d& sample, int ownComponent, int ownFreeLoop) {
    Containment best = Containment::root();
    double bestArea = 1e300;
    for (const auto& r : regions) {
      if (r.isFreeLoop && r.freeLoop == ownFreeLoop) continue;
      if (!r.isFreeLoop && r.component == ownComponent) continue;
      if (std::abs(winding_number(r.poly, sample)) < 0.5) continue;
      if (r.area < bestArea) {
        bestArea = r.area;
        best = r.isFreeLoop ? Containment::in_free_loop(r.freeLoop)
                            : Containment::in_face(r.faceRep);
      }
    }
    return best;
  };

  std::vector<Vec2d> compSample(ncomp, Vec2d::Zero());
  std::vector<bool> haveSample(ncomp, false);
  for (size_t k = 0; k < arcs.size(); ++k) {
    int c = comp[2 * k];
    if (!haveSample[c]) {
      compSample[c] = inter.crossings[arcs[k].fromCross].point;
      haveSample[c] = true;
    }
  }
  for (int c = 0; c < ncomp; ++c) d.nesting[c] = containerOf(compSample[c], c, -1);
  for (size_t ci = 0; ci < curves.size(); ++ci)
    if (freeLoopOfCurve[ci] >= 0)
      d.freeLoops[freeLoopOfCurve[ci]].in =
          containerOf(curves[ci].start(), -1, freeLoopOfCurve[ci]);

  auto vrep = validate(d);
  if (!vrep.ok) {
    std::string msg = "reconstructed map does not validate:";
    for (const auto& v : vrep.violations) msg += " [" + v.rule + ": " + v.where + "]";
    throw GeometryError(msg);
  }
  return out;
}

}  // namespace doodle

namespace doodle {

Segment transformed(const Segment& s, const Similarity& T) {
  switch (s.kind) {
    case Segment::Kind::Line:
      return Segment::line(T.apply(s.a), T.apply(s.b), s.dart);
    case Segment::Kind::Arc: {
      double start = s.startAngle, sweep = s.sweep;
      if (T.reflect) {
        start = -start;
        sweep = -sweep;
      }
      start += T.rotate;
      Vec2d center = T.apply(s.center);
      return Segment::arc(center, T.scale * s.radius, start, sweep, s.dart);
    }
    case Segment::Kind::Cubic:
      return Segment::cubic(T.apply(s.a), T.apply(s.c1), T.apply(s.c2), T.apply(s.b), s.dart);
  }
  return s;
}

PiecewiseCurve transformed(const PiecewiseCurve& c, const Similarity& T) {
  // A reflected parametrization is still a forward chain (the plane
  // orientation flips, the parameter direction does not).
  PiecewiseCurve out;
  for (const auto& s : c.segments) out.segments.push_back(transformed(s, T));
  return out;
}

std::optional<std::vector<Segment>> solve_arc_chain(const Vec2d& from, double fromTan,
                                                    const Vec2d& to,
                                                    const std::vector<ChainPiece>& pieces,
                                                    DartId dart) {
  // Displacement of an arc of radius r, sweep s, entered with tangent th:
  //   r * (dir(th - 90sg + s) - dir(th - 90sg)),  sg = sign(s)
  // which is linear in r.  Straight pieces contribute length * dir(th).
  Vec2d groupCoef[2] = {Vec2d::Zero(), Vec2d::Zero()};
  Vec2d fixedPart = Vec2d::Zero();
  double th = fromTan;
  int maxGroup = -1;
  for (const auto& p : pieces) {
    if (p.isArc) {
      if (p.radiusGroup > 1) return std::nullopt;
      double sg = p.sweep >= 0 ? 1.0 : -1.0;
      Vec2d coef = unit_dir(th - sg * M_PI / 2 + p.sweep) - unit_dir(th - sg * M_PI / 2);
      if (p.radiusGroup < 0)
        fixedPart += p.fixedRadius * coef;
      else {
        maxGroup = std::max(maxGroup, p.radiusGroup);
        groupCoef[p.radiusGroup] += coef;
      }
      th += p.sweep;
    } else {
      fixedPart += p.length * unit_dir(th);
    }
  }
  Vec2d rhs = (to - from) - fixedPart;
  double r[2] = {0, 0};
  if (maxGroup == 1) {
    double den = cross2<double>(groupCoef[0], groupCoef[1]);
    if (std::abs(den) < 1e-12) return std::nullopt;
    r[0] = cross2<double>(rhs, groupCoef[1]) / den;
    r[1] = cross2<double>(groupCoef[0], rhs) / den;
  } else if (maxGroup == 0) {
    double n2 = groupCoef[0].squaredNorm();
    if (n2 < 1e-24) return std::nullopt;
    r[0] = rhs.dot(groupCoef[0]) / n2;
    if ((r[0] * groupCoef[0] - rhs).norm() > 1e-9 * (1 + rhs.norm())) return std::nullopt;
  } else {
    if (rhs.norm() > 1e-12) return std::nullopt;
  }
  for (int g = 0; g <= maxGroup; ++g)
    if (!(r[g] > 1e-9)) return std::nullopt;

  std::vector<Segment> out;
  Vec2d at = from;
  th = fromTan;
  for (const auto& p : pieces) {
    if (p.isArc) {
      double sg = p.sweep >= 0 ? 1.0 : -1.0;
      double radius = p.radiusGroup < 0 ? p.fixedRadius : r[p.radiusGroup];
      Vec2d center = at + radius * unit_dir(th + sg * M_PI / 2);
      double startAngle = th - sg * M_PI / 2;
      out.push_back(Segment::arc(center, radius, startAngle, p.sweep, dart));
      th += p.sweep;
      at = out.back().point(1.0);
    } else {
      Vec2d next = at + p.length * unit_dir(th);
      out.push_back(Segment::line(at, next, dart));
      at = next;
    }
  }
  if ((at - to).norm() > 1e-7 * (1 + (to - from).norm() + std::abs(r[0]) + std::abs(r[1])))
    return std::nullopt;
  return out;
}

std::optional<std::vector<Segment>> teardrop(const Vec2d& anchor, double tan0, double turn,
                                             double size, DartId dart) {
  // Closed loop: a solved "neck" pair around a fixed-radius body.  The body
  // radius and straight pieces set the size; the symmetric layout leaves a
  // one-dimensional closure equation for the neck radius.
  for (double neckFrac : {0.2, 0.125, 0.3, 0.06}) {
  double neck = std::abs(turn) * neckFrac;
  for (double bodyFrac : {0.32, 0.2, 0.45, 0.12, 0.6}) {
    for (double straightFrac : {0.3, 0.15, 0.5, 0.05}) {
      double g = size * straightFrac;
      double sg = turn >= 0 ? 1.0 : -1.0;
      std::vector<ChainPiece> pieces = {
          ChainPiece::arc(sg * neck, 0),
          ChainPiece::straight(g),
          ChainPiece::arc_fixed(turn / 2 - sg * neck, size * bodyFrac),
          ChainPiece::straight(g * 0.6),
          ChainPiece::arc_fixed(turn / 2 - sg * neck, size * bodyFrac),
          ChainPiece::straight(g),
          ChainPiece::arc(sg * neck, 0)};
      if (auto chain = solve_arc_chain(anchor, tan0, anchor, pieces, dart)) return chain;
    }
  }
  }
  return std::nullopt;
}

}  // namespace doodle
