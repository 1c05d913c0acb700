#pragma once

#include <set>

#include "doodle/curve.hpp"
#include "doodle/fary.hpp"
#include "doodle/reduce.hpp"

namespace doodle {

struct SmoothingParams {
  /// Fillet tangent length as a fraction of the local clearance.
  double rho = 0.25;
  /// Size of reinsertion surgeries as a fraction of the local clearance.
  double reinsertFrac = 0.22;
  /// Flattening / verification tolerance handed to the curve kernel.
  double eps = 1e-9;

  CurveTolerances curveTol() const {
    CurveTolerances t;
    t.eps = eps;
    return t;
  }
};

/// A doodle together with the piecewise curves drawing it.  Every segment
/// carries the dart (in travel direction) of the edge traversal it realizes,
/// so surgeries can find and rewrite the geometry of any edge.
struct RealizedDoodle {
  Doodle doodle;
  std::vector<PiecewiseCurve> curves;
  std::vector<int> freeLoopCurve;  // curve index per free loop (-1 while unplaced)

  int total_inflections(const CurveTolerances& tol = {}) const;
};

/// Smooths a straight-line drawing of the subdivided core into the closed
/// regular curves of the core doodle: single-arc fillets at fake vertices and
/// at both strand branches of every crossing, each confined to the vertex's
/// clearance disk.  Every original core edge then carries at most one
/// inflection and subdivided loops carry none (asserted by measurement in the
/// pipeline, as the underlying lemma promises for reduced cores).
RealizedDoodle smooth(const StraightDrawing& z, const Doodle& core, const FakeVertexPlan& plan,
                      const SmoothingParams& p);

/// Drawing of a core with no crossings: one round free loop.
RealizedDoodle realize_circle_core(const Doodle& core, const SmoothingParams& p);

/// Undoes one reduction step geometrically: a Loop1 record grows a teardrop
/// kink on the recorded side of its host edge, a Bigon record splits the
/// contracted crossing into two crossings with a lens between them.  The
/// combinatorial state is updated with the original dart ids and the change
/// in the total inflection count is returned (at most +2 by construction).
int reinsert_step(RealizedDoodle& rd, const Reduction& r, const SmoothingParams& p);

/// Runs the whole reverse trace.  stepDeltas, when given, receives the
/// measured inflection change of every step.
void reinsert_all(RealizedDoodle& rd, const ReductionTrace& trace, const SmoothingParams& p,
                  std::vector<int>* stepDeltas = nullptr);

/// Distance from a point to the drawing, ignoring segments whose dart tag is
/// in `excludeDarts` (kNoDart entries are compared too).
double local_clearance(const RealizedDoodle& rd, const Vec2d& at,
                       const std::set<DartId>& excludeDarts);

/// Per-edge inflection tallies of a realized doodle, keyed by the lower dart
/// of each edge.
std::map<DartId, int> per_edge_inflections(const RealizedDoodle& rd,
                                           const CurveTolerances& tol = {});

}  // namespace doodle
