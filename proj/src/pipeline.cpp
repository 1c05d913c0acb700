#include "doodle/pipeline.hpp"

#include <chrono>
#include <sstream>

#include "doodle/canonical.hpp"
#include "doodle/treelike.hpp"

namespace doodle {

namespace {

// Standalone copy of one map component (dart ids preserved).
Doodle extract_component(const Doodle& d, int comp) {
  auto compOf = d.map.component_of_darts();
  Doodle out;
  out.map = d.map;
  for (DartId x : d.map.darts())
    if (compOf[x] != comp) out.map.remove_dart(x);
  out.outerFaceRep = {d.outerFaceRep[comp]};
  out.nesting = {Containment::root()};
  return out;
}

struct ComponentDrawing {
  RealizedDoodle rd;
  int coreEdges = 0;
  int coreInflections = 0;
  int maxCoreEdgeTally = 0;
  int maxCoreLoopTally = 0;
  std::vector<int> stepDeltas;
};

ComponentDrawing draw_component(const Doodle& comp, const SmoothingParams& p) {
  ComponentDrawing out;
  auto [core, trace] = reduce_fully(comp);
  if (core.map.dart_count() == 0) {
    out.rd = realize_circle_core(core, p);
  } else {
    auto [g, plan] = subdivide(core);
    auto z = embed(g, core.outerFaceRep[0]);
    out.rd = smooth(z, core, plan, p);
    out.coreEdges = core.map.edge_count();
    out.coreInflections = out.rd.total_inflections(p.curveTol());
    auto tallies = per_edge_inflections(out.rd, p.curveTol());
    std::set<DartId> loops;
    for (DartId l : plan.loopEdges) loops.insert(std::min(l, core.map.alpha(l)));
    for (const auto& [edge, tally] : tallies) {
      if (loops.count(edge))
        out.maxCoreLoopTally = std::max(out.maxCoreLoopTally, tally);
      else
        out.maxCoreEdgeTally = std::max(out.maxCoreEdgeTally, tally);
    }
  }
  reinsert_all(out.rd, trace, p, &out.stepDeltas);
  return out;
}

// Flattened boundary of a face of a realized component, in walk order.
std::vector<Vec2d> face_polygon(const RealizedDoodle& rd, DartId faceRep) {
  std::vector<Vec2d> poly;
  for (DartId d : rd.doodle.map.face_of(faceRep)) {
    DartId ad = rd.doodle.map.alpha(d);
    // travel pieces of this dart, then orient along d
    for (const auto& c : rd.curves) {
      int n = static_cast<int>(c.segments.size());
      int first = -1;
      DartId tag = kNoDart;
      for (int i = 0; i < n; ++i) {
        DartId t = c.segments[i].dart;
        if (t != d && t != ad) continue;
        if (c.segments[(i + n - 1) % n].dart != t) {
          first = i;
          tag = t;
          break;
        }
      }
      if (first < 0) continue;
      std::vector<Vec2d> pl;
      int i = first;
      while (c.segments[i].dart == tag) {
        for (const Vec2d& q : flatten_segment(c.segments[i], 1e-3)) pl.push_back(q);
        i = (i + 1) % n;
        if (i == first) break;
      }
      if (tag == ad) std::reverse(pl.begin(), pl.end());
      poly.insert(poly.end(), pl.begin(), pl.end());
      break;
    }
  }
  if (!poly.empty()) poly.push_back(poly.front());
  return poly;
}

double winding(const std::vector<Vec2d>& poly, const Vec2d& p) {
  double total = 0;
  for (size_t i = 0; i + 1 < poly.size(); ++i) {
    Vec2d a = poly[i] - p, b = poly[i + 1] - p;
    if (a.norm() < 1e-12 || b.norm() < 1e-12) return 1.0;
    total += norm_angle(angle_of(b) - angle_of(a));
  }
  return total / (2 * M_PI);
}

// A point inside the polygon with room around it, by refining grid search.
std::pair<Vec2d, double> inner_disk(const std::vector<Vec2d>& poly) {
  Vec2d lo = poly[0], hi = poly[0];
  for (const Vec2d& q : poly) {
    lo = lo.cwiseMin(q);
    hi = hi.cwiseMax(q);
  }
  auto distTo = [&](const Vec2d& p) {
    double best = 1e300;
    for (size_t i = 0; i + 1 < poly.size(); ++i)
      best = std::min(best, std::sqrt(segment_dist2<double>(poly[i], poly[i + 1], p)));
    return best;
  };
  for (int res = 12; res <= 96; res *= 2) {
    Vec2d best(0, 0);
    double bestDist = -1;
    for (int i = 1; i < res; ++i)
      for (int j = 1; j < res; ++j) {
        Vec2d p(lo.x() + (hi.x() - lo.x()) * i / res, lo.y() + (hi.y() - lo.y()) * j / res);
        if (std::abs(winding(poly, p)) < 0.5) continue;
        double dist = distTo(p);
        if (dist > bestDist) {
          bestDist = dist;
          best = p;
        }
      }
    if (bestDist > 0) return {best, bestDist};
  }
  throw GeometryError("no interior point found for a face");
}

std::pair<Vec2d, Vec2d> curves_bbox(const std::vector<PiecewiseCurve>& curves) {
  Vec2d lo(1e300, 1e300), hi(-1e300, -1e300);
  for (const auto& c : curves)
    for (const auto& s : c.segments)
      for (const Vec2d& q : flatten_segment(s, 1e-3)) {
        lo = lo.cwiseMin(q);
        hi = hi.cwiseMax(q);
      }
  return {lo, hi};
}

PiecewiseCurve unit_circle_curve() {
  PiecewiseCurve c;
  double h = 1.0, r = 0.6;
  Vec2d corners[4] = {{h, h}, {-h, h}, {-h, -h}, {h, -h}};
  for (int k = 0; k < 4; ++k) {
    double a0 = -M_PI / 2 + k * M_PI / 2;
    Vec2d arcStart = corners[k] + r * unit_dir(a0);
    Vec2d prevArcEnd = corners[(k + 3) % 4] + r * unit_dir(a0);
    c.segments.push_back(Segment::line(prevArcEnd, arcStart, kNoDart));
    c.segments.push_back(Segment::arc(corners[k], r, a0, M_PI / 2, kNoDart));
  }
  return c;
}

}  // namespace

PipelineResult run_pipeline(const Doodle& d, const SmoothingParams& p) {
  auto t0 = std::chrono::steady_clock::now();
  auto vrep = validate(d);
  if (!vrep.ok) {
    std::string msg = "pipeline: input does not validate:";
    for (const auto& v : vrep.violations) msg += " [" + v.rule + ": " + v.where + "]";
    throw MapError(msg);
  }

  PipelineResult res;
  PipelineReport& rep = res.report;
  rep.n = d.n();
  rep.bound = 2 * rep.n;

  // Entities: map components then input free loops; parents from nesting.
  auto compOf = d.map.component_of_darts();
  int ncomp = d.map.component_count();
  int nfl = static_cast<int>(d.freeLoops.size());
  int total = ncomp + nfl;
  std::vector<int> parent(total, -1);
  std::vector<DartId> parentFace(total, kNoDart);
  auto resolve = [&](const Containment& c, int idx) {
    switch (c.kind) {
      case Containment::Kind::Root:
        break;
      case Containment::Kind::Face:
        parent[idx] = compOf[c.faceDart];
        parentFace[idx] = c.faceDart;
        break;
      case Containment::Kind::FreeLoop:
        parent[idx] = ncomp + c.freeLoop;
        break;
    }
  };
  for (int c = 0; c < ncomp; ++c) resolve(d.nesting[c], c);
  for (int i = 0; i < nfl; ++i) resolve(d.freeLoops[i].in, ncomp + i);
  std::vector<std::vector<int>> children(total);
  for (int e = 0; e < total; ++e)
    if (parent[e] >= 0) children[parent[e]].push_back(e);

  // Draw each map component on its own.
  std::vector<ComponentDrawing> drawings;
  for (int c = 0; c < ncomp; ++c) {
    drawings.push_back(draw_component(extract_component(d, c), p));
    const auto& cd = drawings.back();
    rep.traceLength += static_cast<int>(cd.stepDeltas.size());
    rep.coreEdges += cd.coreEdges;
    rep.coreInflections += cd.coreInflections;
    rep.maxCoreEdgeTally = std::max(rep.maxCoreEdgeTally, cd.maxCoreEdgeTally);
    rep.maxCoreLoopTally = std::max(rep.maxCoreLoopTally, cd.maxCoreLoopTally);
    for (int delta : cd.stepDeltas) {
      rep.stepDeltas.push_back(delta);
      if (delta > 2) rep.budgetHolds = false;
    }
  }
  if (rep.maxCoreEdgeTally > 1 || rep.maxCoreLoopTally > 0) rep.perEdgeLemmaHolds = false;

  // Assemble bottom-up.
  std::vector<std::vector<PiecewiseCurve>> assembled(total);
  std::function<void(int)> assemble = [&](int e) {
    std::vector<PiecewiseCurve> own;
    if (e < ncomp)
      own = drawings[e].rd.curves;
    else
      own = {unit_circle_curve()};
    for (int ch : children[e]) {
      assemble(ch);
      Vec2d at;
      double room;
      if (e < ncomp) {
        auto poly = face_polygon(drawings[e].rd, parentFace[ch]);
        std::tie(at, room) = inner_disk(poly);
      } else {
        at = Vec2d(0, 0);
        room = 0.9;  // inside the unit circle curve
      }
      auto [lo, hi] = curves_bbox(assembled[ch]);
      Vec2d mid = 0.5 * (lo + hi);
      double radius = 0.5 * (hi - lo).norm();
      double s = (room * 0.55) / std::max(radius, 1e-9);
      Similarity T{s, 0.0, at - s * mid, false};
      for (const auto& c : assembled[ch]) own.push_back(transformed(c, T));
    }
    assembled[e] = std::move(own);
  };

  double cursor = 0;
  for (int e = 0; e < total; ++e) {
    if (parent[e] >= 0) continue;
    assemble(e);
    auto [lo, hi] = curves_bbox(assembled[e]);
    Similarity T{1.0, 0.0, Vec2d(cursor - lo.x(), -0.5 * (lo.y() + hi.y())), false};
    for (const auto& c : assembled[e]) res.curves.push_back(transformed(c, T));
    cursor += (hi.x() - lo.x()) + 1.0;
  }

  // Final measurements.
  rep.finalInflections = total_inflections(res.curves, p.curveTol());
  rep.boundSatisfied = rep.finalInflections <= rep.bound;
  auto rec = reconstruct_map(res.curves, p.curveTol());
  res.reconstructed = rec.doodle;
  rep.mapFidelity = map_isomorphic(res.reconstructed, d);

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

std::string format_report(const PipelineReport& r) {
  std::ostringstream os;
  os << "n " << r.n << "\n";
  os << "trace-length " << r.traceLength << "\n";
  os << "core-edges " << r.coreEdges << "\n";
  os << "core-inflections " << r.coreInflections << "\n";
  os << "core-max-edge-tally " << r.maxCoreEdgeTally << "\n";
  os << "core-max-loop-tally " << r.maxCoreLoopTally << "\n";
  os << "step-deltas";
  for (int d : r.stepDeltas) os << " " << d;
  os << "\n";
  os << "final-inflections " << r.finalInflections << "\n";
  os << "bound " << r.bound << "\n";
  os << "bound-satisfied " << (r.boundSatisfied ? "yes" : "no") << "\n";
  os << "map-fidelity " << (r.mapFidelity ? "yes" : "no") << "\n";
  os << "per-edge-lemma " << (r.perEdgeLemmaHolds ? "yes" : "no") << "\n";
  os << "reinsertion-budget " << (r.budgetHolds ? "yes" : "no") << "\n";
  return os.str();
}

CorpusSummary verify_corpus(const CorpusSpec& spec, const SmoothingParams& p) {
  CorpusSummary sum;
  auto corpus = generate_corpus(spec);
  std::ostringstream os;
  for (size_t i = 0; i < corpus.size(); ++i) {
    const Doodle& d = corpus[i];
    sum.total++;
    auto res = run_pipeline(d, p);
    if (!res.report.ok()) {
      sum.failures++;
      sum.ok = false;
      os << "FAIL pipeline doodle " << i << " n=" << d.n() << "\n"
         << format_report(res.report);
    }
    if (d.n() >= 1)
      sum.maxRatio = std::max(
          sum.maxRatio, static_cast<double>(res.report.finalInflections) / (2.0 * d.n()));

    if (auto tree = extract_tree(d)) {
      sum.treelikeCount++;
      auto tl = draw_treelike(d, *tree, p);
      if (!tl.ok) {
        sum.treelikeFailures++;
        sum.ok = false;
        os << "FAIL treelike doodle " << i << " n=" << d.n() << " measured=" << tl.measured
           << " bound=" << tl.guaranteedBound << "\n";
      }
      if (d.n() >= 1)
        sum.maxTreelikeRatio =
            std::max(sum.maxTreelikeRatio,
                     static_cast<double>(tl.measured) / std::max(1, tl.guaranteedBound));
    }
  }
  std::ostringstream head;
  head << "corpus " << sum.total << " doodles, " << sum.failures << " pipeline failures, "
       << sum.treelikeCount << " tree-like, " << sum.treelikeFailures
       << " tree-like failures\n";
  head << "max I/2n ratio " << sum.maxRatio << ", max tree-like ratio " << sum.maxTreelikeRatio
       << "\n";
  sum.text = head.str() + os.str();
  return sum;
}

std::vector<ProbeRow> conjecture_probe(const std::vector<Doodle>& corpus,
                                       const SmoothingParams& p) {
  std::vector<ProbeRow> rows;
  for (const Doodle& d : corpus) {
    if (d.map.component_count() + static_cast<int>(d.freeLoops.size()) != 1) continue;
    if (curve_count(d) != 1) continue;
    auto res = run_pipeline(d, p);
    ProbeRow row;
    row.n = d.n();
    row.measured = res.report.finalInflections;
    row.withinConjecture = row.measured <= row.n + 1;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace doodle
