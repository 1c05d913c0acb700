#include "doodle/smooth.hpp"

#include <algorithm>
#include <cmath>

namespace doodle {

int RealizedDoodle::total_inflections(const CurveTolerances& tol) const {
  return doodle::total_inflections(curves, tol);
}

namespace {

// Reverses a segment's traversal; the dart tag flips to the opposite dart.
Segment reversed_segment(const Segment& s, const CombinatorialMap& m) {
  Segment r;
  switch (s.kind) {
    case Segment::Kind::Line:
      r = Segment::line(s.b, s.a);
      break;
    case Segment::Kind::Arc:
      r = Segment::arc(s.center, s.radius, s.startAngle + s.sweep, -s.sweep);
      break;
    case Segment::Kind::Cubic:
      r = Segment::cubic(s.b, s.c2, s.c1, s.a);
      break;
  }
  r.dart = (s.dart == kNoDart) ? kNoDart : m.alpha(s.dart);
  return r;
}

// Fillet arc for the corner at `apex` between incoming travel direction u and
// outgoing direction w, tangent at distance t on both sides.  Empty when the
// corner is straight.
std::optional<Segment> corner_fillet(const Vec2d& apex, const Vec2d& u, const Vec2d& w,
                                     double t, DartId dart) {
  double turn = norm_angle(angle_of(w) - angle_of(u));
  if (std::abs(turn) < 1e-12) return std::nullopt;
  Vec2d tA = apex - t * u;
  double radius = t / std::tan(std::abs(turn) / 2);
  double sg = turn > 0 ? 1.0 : -1.0;
  Vec2d center = tA + radius * sg * rot90(u);
  return Segment::arc(center, radius, angle_of(tA - center), turn, dart);
}

// Arc leaving `from` with tangent `theta`, turning `sweep`, radius r.
Segment arc_from(const Vec2d& from, double theta, double sweep, double r, DartId dart) {
  double sg = sweep >= 0 ? 1.0 : -1.0;
  Vec2d center = from + r * sg * rot90(unit_dir(theta));
  return Segment::arc(center, r, angle_of(from - center), sweep, dart);
}

void rotate_curve(PiecewiseCurve& c, int newStart) {
  std::rotate(c.segments.begin(), c.segments.begin() + newStart, c.segments.end());
}

// Travel-ordered indices of the contiguous run of pieces tagged with either
// side of one edge, plus the travel tag.  Works cyclically without rotating.
struct RunView {
  int curve = -1;
  std::vector<int> idx;
  DartId travelTag = kNoDart;
};

RunView find_run(const RealizedDoodle& rd, DartId dA, DartId dB) {
  for (size_t ci = 0; ci < rd.curves.size(); ++ci) {
    const auto& segs = rd.curves[ci].segments;
    int n = static_cast<int>(segs.size());
    int first = -1;
    for (int i = 0; i < n; ++i) {
      DartId t = segs[i].dart;
      if (t != dA && t != dB) continue;
      if (segs[(i + n - 1) % n].dart != t) {
        first = i;
        break;
      }
    }
    bool whole = false;
    if (first < 0) {
      bool all = !segs.empty();
      for (auto& s : segs) all = all && (s.dart == dA || s.dart == dB);
      if (!all) continue;
      first = 0;
      whole = true;
    }
    RunView run;
    run.curve = static_cast<int>(ci);
    run.travelTag = segs[first].dart;
    int i = first;
    do {
      run.idx.push_back(i);
      i = (i + 1) % n;
    } while (segs[i].dart == run.travelTag && (whole ? i != first : true) &&
             static_cast<int>(run.idx.size()) <= n);
    return run;
  }
  throw GeometryError("no geometry found for edge darts " + std::to_string(dA) + "/" +
                      std::to_string(dB));
}

}  // namespace

double local_clearance(const RealizedDoodle& rd, const Vec2d& at,
                       const std::set<DartId>& excludeDarts) {
  double best = 1e300;
  for (const auto& c : rd.curves)
    for (const auto& s : c.segments) {
      if (excludeDarts.count(s.dart)) continue;
      auto pl = flatten_segment(s, 1e-3);
      for (size_t i = 0; i + 1 < pl.size(); ++i)
        best = std::min(best, std::sqrt(segment_dist2<double>(pl[i], pl[i + 1], at)));
    }
  return best;
}

std::map<DartId, int> per_edge_inflections(const RealizedDoodle& rd,
                                           const CurveTolerances& tol) {
  std::map<DartId, int> out;
  for (const auto& e : rd.doodle.map.edge_list()) out[std::min(e[0], e[1])] = 0;
  for (const auto& c : rd.curves) {
    auto rep = count_inflections(c, tol);
    for (const auto& [dart, k] : rep.perDart) {
      if (dart == kNoDart) continue;
      DartId lo = std::min(dart, rd.doodle.map.alpha(dart));
      out[lo] += k;
    }
  }
  return out;
}

RealizedDoodle realize_circle_core(const Doodle& core, const SmoothingParams& p) {
  if (core.map.dart_count() != 0 || core.freeLoops.size() != 1)
    throw GeometryError("realize_circle_core: core is not a single free loop");
  RealizedDoodle rd;
  rd.doodle = core;
  PiecewiseCurve c;
  // Rounded square, counterclockwise; the sides are straight pieces future
  // surgeries can host on.
  double h = 1.0, r = 0.6;
  Vec2d corners[4] = {{h, h}, {-h, h}, {-h, -h}, {h, -h}};
  for (int k = 0; k < 4; ++k) {
    double a0 = -M_PI / 2 + k * M_PI / 2;
    Vec2d arcStart = corners[k] + r * unit_dir(a0);
    Vec2d prevArcEnd = corners[(k + 3) % 4] + r * unit_dir(a0);
    c.segments.push_back(Segment::line(prevArcEnd, arcStart, kNoDart));
    c.segments.push_back(Segment::arc(corners[k], r, a0, M_PI / 2, kNoDart));
  }
  check_curve(c, p.curveTol());
  rd.curves.push_back(std::move(c));
  rd.freeLoopCurve = {0};
  return rd;
}

RealizedDoodle smooth(const StraightDrawing& z, const Doodle& core, const FakeVertexPlan& plan,
                      const SmoothingParams& p) {
  RealizedDoodle rd;
  rd.doodle = core;
  const CombinatorialMap& g = z.graph;

  std::vector<double> tlen(g.capacity(), 0.0);
  for (const auto& v : g.vertices()) {
    double t = p.rho * z.clearance[v[0]];
    for (DartId x : v) {
      double len = (z.vertex_pos_d(g.alpha(x)) - z.vertex_pos_d(x)).norm();
      t = std::min(t, p.rho * len);
    }
    for (DartId x : v) tlen[x] = t;
  }

  for (const auto& strand : strands(core)) {
    PiecewiseCurve curve;
    std::vector<DartId> travel;
    for (size_t i = 0; i < strand.size(); i += 2) travel.push_back(strand[i]);

    for (size_t i = 0; i < travel.size(); ++i) {
      DartId d = travel[i];
      DartId dNext = travel[(i + 1) % travel.size()];
      const auto& chain = plan.chainOfDart.at(d);
      for (size_t k = 0; k < chain.size(); ++k) {
        DartId gd = chain[k];
        Vec2d a = z.vertex_pos_d(gd), b = z.vertex_pos_d(g.alpha(gd));
        Vec2d dir = (b - a).normalized();
        curve.segments.push_back(
            Segment::line(a + tlen[gd] * dir, b - tlen[g.alpha(gd)] * dir, d));
        if (k + 1 < chain.size()) {
          DartId gn = chain[k + 1];
          Vec2d w = (z.vertex_pos_d(g.alpha(gn)) - z.vertex_pos_d(gn)).normalized();
          if (auto f = corner_fillet(b, dir, w, tlen[g.alpha(gd)], d))
            curve.segments.push_back(*f);
          else
            curve.segments.push_back(
                Segment::line(b - tlen[g.alpha(gd)] * dir, b + tlen[g.alpha(gd)] * w, d));
        }
      }
      DartId gLast = chain.back();
      Vec2d vpos = z.vertex_pos_d(g.alpha(gLast));
      Vec2d u = (vpos - z.vertex_pos_d(gLast)).normalized();
      DartId gFirst = plan.chainOfDart.at(dNext).front();
      Vec2d w = (z.vertex_pos_d(g.alpha(gFirst)) - z.vertex_pos_d(gFirst)).normalized();
      double t = tlen[g.alpha(gLast)];
      if (auto f = corner_fillet(vpos, u, w, t, dNext))
        curve.segments.push_back(*f);
      else
        curve.segments.push_back(Segment::line(vpos - t * u, vpos + t * w, dNext));
    }
    check_curve(curve, p.curveTol());
    rd.curves.push_back(std::move(curve));
  }
  rd.freeLoopCurve.assign(core.freeLoops.size(), -1);
  return rd;
}

// ---- Loop1 reinsertion ----

namespace {

void undo_loop1_geometric(RealizedDoodle& rd, const Reduction& r, const SmoothingParams& p) {
  const bool collapse = r.collapse;
  RunView run;
  bool sideLeft;
  DartId loopTag, suffixTag, prefixTag;

  if (collapse) {
    int fl = r.freeLoopIndex;
    if (fl != static_cast<int>(rd.doodle.freeLoops.size()) - 1 || rd.freeLoopCurve[fl] < 0)
      throw GeometryError("loop1 undo: free loop bookkeeping is off");
    run.curve = rd.freeLoopCurve[fl];
    for (int i = 0; i < static_cast<int>(rd.curves[run.curve].segments.size()); ++i)
      run.idx.push_back(i);
    // The circle is drawn counterclockwise; its bounded side is left of
    // travel.  The petal belongs to the side left of dart q.
    bool travelIsQ = r.petalIntoDisk;
    sideLeft = travelIsQ;
    prefixTag = suffixTag = run.travelTag = travelIsQ ? r.q : r.p;
    loopTag = travelIsQ ? r.l : r.al;
  } else {
    run = find_run(rd, r.pPrime, r.qPrime);
    bool travelViaP = run.travelTag == r.pPrime;
    sideLeft = travelViaP;
    prefixTag = run.travelTag;
    loopTag = travelViaP ? r.l : r.al;
    suffixTag = travelViaP ? r.q : r.p;
  }

  PiecewiseCurve& curve = rd.curves[run.curve];
  int host = -1;
  double bestLen = -1;
  for (int i : run.idx) {
    const Segment& s = curve.segments[i];
    if (s.kind != Segment::Kind::Line) continue;
    double len = (s.b - s.a).norm();
    if (len > bestLen) {
      bestLen = len;
      host = i;
    }
  }
  if (host < 0) throw GeometryError("loop1 undo: host edge has no straight piece");
  int hostPosInRun = static_cast<int>(
      std::find(run.idx.begin(), run.idx.end(), host) - run.idx.begin());
  Segment hostSeg = curve.segments[host];

  Vec2d A0 = hostSeg.a, B0 = hostSeg.b;
  Vec2d dir = (B0 - A0).normalized();
  double theta = angle_of(dir);
  double hostLen = (B0 - A0).norm();
  Vec2d mid = 0.5 * (A0 + B0);

  std::set<DartId> exclude{run.travelTag};
  if (!collapse) exclude.insert(run.travelTag == r.pPrime ? r.qPrime : r.pPrime);
  if (collapse) exclude.insert(kNoDart);
  double clr = local_clearance(rd, mid, exclude);
  double s = sideLeft ? 1.0 : -1.0;
  double beta = M_PI / 7;

  for (double shrink : {1.0, 0.5, 0.25, 0.1, 0.04}) {
    double budget = std::min(clr * p.reinsertFrac, hostLen * 0.3) * shrink;
    if (budget <= 0) continue;
    double rEntry = budget * 0.5;
    double span = 2 * rEntry * std::sin(beta);
    Vec2d A = mid - 0.5 * span * dir;
    Segment entry = arc_from(A, theta, s * beta, rEntry, prefixTag);
    Vec2d X = entry.point(1.0);
    auto petal = teardrop(X, theta + s * beta, s * (2 * M_PI - 2 * beta), budget, loopTag);
    if (!petal) continue;
    double extent = 0;
    for (const auto& ps : *petal)
      for (const Vec2d& q : flatten_segment(ps, 1e-3))
        extent = std::max(extent, (q - mid).norm());
    if (extent > clr * 0.45 && shrink > 0.04) continue;

    Segment exitArc = arc_from(X, theta - s * beta, s * beta, rEntry, suffixTag);
    Vec2d B = exitArc.point(1.0);
    if (std::abs(norm_angle(angle_of(exitArc.tangent(1.0)) - theta)) > 1e-9) continue;
    if (std::abs(cross2<double>(B - A0, dir)) > 1e-7) continue;

    std::vector<Segment> replacement;
    replacement.push_back(Segment::line(A0, A, prefixTag));
    replacement.push_back(entry);
    for (auto& ps : *petal) replacement.push_back(ps);
    replacement.push_back(exitArc);
    replacement.push_back(Segment::line(B, B0, suffixTag));
    bool ok = true;
    for (size_t i = 0; i + 1 < replacement.size(); ++i)
      ok = ok && (replacement[i].point(1) - replacement[i + 1].point(0)).norm() < 1e-7;
    if (!ok) continue;

    // Splice: pieces of the run strictly after the host keep the edge's far
    // half; everything before keeps the near half (same tag as before).
    std::vector<Segment> rebuilt;
    int n = static_cast<int>(curve.segments.size());
    std::vector<char> afterHost(n, 0), inRun(n, 0);
    for (int k2 = 0; k2 < static_cast<int>(run.idx.size()); ++k2) {
      inRun[run.idx[k2]] = 1;
      if (k2 > hostPosInRun) afterHost[run.idx[k2]] = 1;
    }
    for (int i = 0; i < n; ++i) {
      if (i == host) {
        for (auto& ps : replacement) rebuilt.push_back(ps);
        continue;
      }
      Segment ps = curve.segments[i];
      if (collapse && ps.dart == kNoDart)
        ps.dart = afterHost[i] || !inRun[i] ? suffixTag : prefixTag;
      else if (inRun[i] && afterHost[i])
        ps.dart = suffixTag;
      rebuilt.push_back(ps);
    }
    curve.segments = std::move(rebuilt);
    rd.doodle = undo_reduction(rd.doodle, r);
    if (collapse) rd.freeLoopCurve.pop_back();
    check_curve(curve, p.curveTol());
    return;
  }
  throw GeometryError("loop1 undo: could not fit the petal");
}

// ---- Bigon reinsertion ----

struct Stub {
  DartId dart;
  int curve = -1;
  int piece = -1;
  double cutT = 0;
  Vec2d point;
  Vec2d outward;
  bool travelOutward = false;
};

void undo_bigon_geometric(RealizedDoodle& rd, const Reduction& r, const SmoothingParams& p) {
  const CombinatorialMap& m = rd.doodle.map;  // pre-undo map
  DartId stubDarts[4] = {r.a1, r.a2, r.b1, r.b2};

  auto makeStub = [&](DartId x, bool shareLow) {
    RunView run = find_run(rd, x, m.alpha(x));
    const auto& segs = rd.curves[run.curve].segments;
    bool outward = run.travelTag == x;
    Stub st;
    st.dart = x;
    st.curve = run.curve;
    st.travelOutward = outward;
    for (size_t k = 0; k < run.idx.size(); ++k) {
      int i = outward ? run.idx[k] : run.idx[run.idx.size() - 1 - k];
      if (segs[i].kind == Segment::Kind::Line) {
        st.piece = i;
        break;
      }
    }
    if (st.piece < 0) throw GeometryError("bigon undo: edge has no straight piece");
    bool loopEdge = false;
    for (DartId y : stubDarts) loopEdge = loopEdge || (y != x && y == m.alpha(x));
    double t;
    if (!loopEdge)
      t = outward ? 0.4 : 0.6;
    else
      t = shareLow ? 0.3 : 0.7;
    st.cutT = t;
    st.point = segs[st.piece].point(t);
    Vec2d tan = segs[st.piece].tangent(t);
    st.outward = outward ? tan : Vec2d(-tan);
    return st;
  };

  std::map<DartId, Stub> stub;
  for (DartId x : stubDarts) stub[x] = makeStub(x, x < m.alpha(x));

  Vec2d w;
  {
    RunView run = find_run(rd, r.a1, m.alpha(r.a1));
    const auto& segs = rd.curves[run.curve].segments;
    w = (run.travelTag == r.a1) ? segs[run.idx.front()].point(0.0)
                                : segs[run.idx.back()].point(1.0);
  }

  double u1 = angle_of(-stub[r.a1].outward);
  double e1 = angle_of(stub[r.b2].outward);
  double u2 = angle_of(-stub[r.a2].outward);
  double e2 = angle_of(stub[r.b1].outward);
  double d1turn = norm_angle(e1 - u1);
  double d2turn = norm_angle(e2 - u2);
  if (d1turn < 0) d1turn += 2 * M_PI;
  if (d2turn > 0) d2turn -= 2 * M_PI;
  if (d1turn <= 1e-6 || d2turn >= -1e-6)
    throw GeometryError("bigon undo: inconsistent branch tangents");

  // Lens-axis window (angles relative to u1): the axis direction must let all
  // four connector chains keep a single curvature sign.
  double i2lo = norm_angle(u2 + d2turn - u1);
  double i2hi = i2lo - d2turn;  // == norm(u2 - u1) up to wrap
  double lo = std::max(0.0, i2lo), hi = std::min(d1turn, i2hi);
  if (!(lo < hi)) throw GeometryError("bigon undo: empty lens-axis window");
  double lensHalf = std::min(M_PI / 18, (hi - lo) / 4);
  double mu = u1 + 0.5 * (lo + hi);

  double stubDist = 1e300;
  for (DartId x : stubDarts) stubDist = std::min(stubDist, (stub[x].point - w).norm());

  auto connector = [&](const Vec2d& from, double fromTan, const Vec2d& to, double turn,
                       DartId tag) -> std::optional<std::vector<Segment>> {
    if (std::abs(turn) < 1e-7) {
      Vec2d d = to - from;
      if (d.norm() < 1e-12) return std::nullopt;
      if (std::abs(norm_angle(angle_of(d) - fromTan)) < 1e-6)
        return std::vector<Segment>{Segment::line(from, to, tag)};
      return std::nullopt;
    }
    for (double fr : {0.4, 0.6, 0.25, 0.75, 0.5}) {
      for (double gs : {0.0, 0.3 * stubDist, 0.7 * stubDist}) {
        std::vector<ChainPiece> pieces;
        pieces.push_back(ChainPiece::arc(turn * fr, 0));
        if (gs > 0) pieces.push_back(ChainPiece::straight(gs));
        pieces.push_back(ChainPiece::arc(turn * (1 - fr), 1));
        if (auto ch = solve_arc_chain(from, fromTan, to, pieces, tag)) return ch;
      }
    }
    return std::nullopt;
  };

  for (double rhoFrac : {0.45, 0.3, 0.6, 0.15}) {
    double rho = stubDist * rhoFrac;
    Vec2d A = w - rho * unit_dir(mu);
    Vec2d B = w + rho * unit_dir(mu);

    auto entry1 =
        connector(stub[r.a1].point, u1, A, norm_angle(mu - lensHalf - u1), m.alpha(r.a1));
    auto exit1 =
        connector(B, mu + lensHalf, stub[r.b2].point, norm_angle(e1 - (mu + lensHalf)), r.b2);
    auto entry2 =
        connector(stub[r.a2].point, u2, A, norm_angle(mu + lensHalf - u2), m.alpha(r.a2));
    auto exit2 =
        connector(B, mu - lensHalf, stub[r.b1].point, norm_angle(e2 - (mu - lensHalf)), r.b1);
    if (!entry1 || !exit1 || !entry2 || !exit2) continue;

    double R = rho / std::sin(lensHalf);
    Segment lens1 = arc_from(A, mu - lensHalf, 2 * lensHalf, R, r.d1);
    Segment lens2 = arc_from(A, mu + lensHalf, -2 * lensHalf, R, r.ad2);
    if ((lens1.point(1.0) - B).norm() > 1e-7 * (1 + rho) ||
        (lens2.point(1.0) - B).norm() > 1e-7 * (1 + rho))
      continue;

    std::vector<Segment> n1, n2;
    for (auto& s : *entry1) n1.push_back(s);
    n1.push_back(lens1);
    for (auto& s : *exit1) n1.push_back(s);
    for (auto& s : *entry2) n2.push_back(s);
    n2.push_back(lens2);
    for (auto& s : *exit2) n2.push_back(s);

    std::set<DartId> exclude;
    for (DartId x : stubDarts) {
      exclude.insert(x);
      exclude.insert(m.alpha(x));
    }
    double clr = local_clearance(rd, w, exclude);
    double extent = 0;
    for (auto* chain : {&n1, &n2})
      for (auto& s : *chain)
        for (const Vec2d& q : flatten_segment(s, 1e-3))
          extent = std::max(extent, (q - w).norm());
    if (extent > std::max(2.5 * stubDist, 0.9 * clr) && rhoFrac > 0.15) continue;

    // ---- splice ----
    struct Chunk {
      std::vector<Segment> segs;
    };
    std::vector<Chunk> chunks{{n1}, {n2}};
    std::set<int> affected;
    for (DartId x : stubDarts) affected.insert(stub[x].curve);

    for (int ci : affected) {
      auto& segs = rd.curves[ci].segments;
      int n = static_cast<int>(segs.size());
      struct Cut {
        int piece;
        double t;
        bool outward;
      };
      std::vector<Cut> cuts;
      for (DartId x : stubDarts)
        if (stub[x].curve == ci)
          cuts.push_back({stub[x].piece, stub[x].cutT, stub[x].travelOutward});
      std::sort(cuts.begin(), cuts.end(),
                [](const Cut& a, const Cut& b) { return a.piece + a.t < b.piece + b.t; });
      int k = static_cast<int>(cuts.size());
      for (int g = 0; g < k; ++g) {
        const Cut& from = cuts[g];
        const Cut& to = cuts[(g + 1) % k];
        if (!from.outward) continue;  // this gap runs through the old vertex
        Chunk ch;
        if (from.piece == to.piece && g + 1 < k && to.t > from.t) {
          const Segment& fs = segs[from.piece];
          ch.segs.push_back(Segment::line(fs.point(from.t), fs.point(to.t), fs.dart));
        } else {
          const Segment& fs = segs[from.piece];
          if (from.t < 1 - 1e-9)
            ch.segs.push_back(Segment::line(fs.point(from.t), fs.b, fs.dart));
          int i = (from.piece + 1) % n;
          int guard = 0;
          while (i != to.piece) {
            ch.segs.push_back(segs[i]);
            i = (i + 1) % n;
            if (++guard > n) throw GeometryError("bigon undo: splice walk failed");
          }
          const Segment& ts = segs[to.piece];
          if (to.t > 1e-9) ch.segs.push_back(Segment::line(ts.a, ts.point(to.t), ts.dart));
        }
        if (!ch.segs.empty()) chunks.push_back(std::move(ch));
      }
    }

    // The combinatorial undo first, so reversed tags can use the full map.
    rd.doodle = undo_reduction(rd.doodle, r);
    const CombinatorialMap& post = rd.doodle.map;

    std::vector<PiecewiseCurve> newCurves;
    std::vector<bool> used(chunks.size(), false);
    double stitchTol = 1e-6 * (1 + stubDist);
    for (size_t start = 0; start < chunks.size(); ++start) {
      if (used[start]) continue;
      PiecewiseCurve c;
      for (auto& s : chunks[start].segs) c.segments.push_back(s);
      used[start] = true;
      int guard = 0;
      while ((c.segments.back().point(1.0) - c.segments.front().point(0.0)).norm() >
             stitchTol) {
        Vec2d end = c.segments.back().point(1.0);
        bool extended = false;
        for (size_t j = 0; j < chunks.size() && !extended; ++j) {
          if (used[j]) continue;
          Vec2d s0 = chunks[j].segs.front().point(0.0);
          Vec2d s1 = chunks[j].segs.back().point(1.0);
          if ((s0 - end).norm() < stitchTol) {
            for (auto& s : chunks[j].segs) c.segments.push_back(s);
            used[j] = true;
            extended = true;
          } else if ((s1 - end).norm() < stitchTol) {
            for (auto it = chunks[j].segs.rbegin(); it != chunks[j].segs.rend(); ++it)
              c.segments.push_back(reversed_segment(*it, post));
            used[j] = true;
            extended = true;
          }
        }
        if (!extended || ++guard > 1000)
          throw GeometryError("bigon undo: could not stitch the curves back up");
      }
      newCurves.push_back(std::move(c));
    }

    std::vector<PiecewiseCurve> finalCurves;
    std::vector<int> curveMap(rd.curves.size(), -1);
    for (size_t ci = 0; ci < rd.curves.size(); ++ci) {
      if (affected.count(static_cast<int>(ci))) continue;
      curveMap[ci] = static_cast<int>(finalCurves.size());
      finalCurves.push_back(std::move(rd.curves[ci]));
    }
    for (auto& c : newCurves) finalCurves.push_back(std::move(c));
    for (auto& fl : rd.freeLoopCurve)
      if (fl >= 0 && curveMap[fl] >= 0) fl = curveMap[fl];
    rd.curves = std::move(finalCurves);
    for (auto& c : rd.curves) check_curve(c, p.curveTol());
    return;
  }
  throw GeometryError("bigon undo: no preset produced a valid lens");
}

}  // namespace

int reinsert_step(RealizedDoodle& rd, const Reduction& r, const SmoothingParams& p) {
  int before = rd.total_inflections(p.curveTol());
  if (r.kind == Reduction::Kind::Loop1)
    undo_loop1_geometric(rd, r, p);
  else
    undo_bigon_geometric(rd, r, p);
  int after = rd.total_inflections(p.curveTol());
  return after - before;
}

void reinsert_all(RealizedDoodle& rd, const ReductionTrace& trace, const SmoothingParams& p,
                  std::vector<int>* stepDeltas) {
  for (auto it = trace.steps.rbegin(); it != trace.steps.rend(); ++it) {
    int delta = reinsert_step(rd, *it, p);
    if (stepDeltas) stepDeltas->push_back(delta);
  }
}

}  // namespace doodle
