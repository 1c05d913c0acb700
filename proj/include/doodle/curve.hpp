#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "doodle/doodle.hpp"
#include "doodle/geom.hpp"

namespace doodle {

/// Geometry error raised by the curve analytics (tangential contact, broken
/// chaining, degenerate pieces).
class GeometryError : public std::runtime_error {
 public:
  explicit GeometryError(const std::string& what) : std::runtime_error(what) {}
};

/// One piece of a piecewise curve.  Arcs are center/radius/start-angle/sweep;
/// positive sweep turns counterclockwise, so the signed curvature of an arc is
/// sign(sweep)/radius exactly.
struct Segment {
  enum class Kind { Line, Arc, Cubic };
  Kind kind = Kind::Line;
  Vec2d a, b;                    // endpoints (all kinds keep them in sync)
  Vec2d center;                  // arc
  double radius = 0;             // arc
  double startAngle = 0;         // arc
  double sweep = 0;              // arc, signed radians
  Vec2d c1, c2;                  // cubic inner control points
  DartId dart = kNoDart;         // provenance: edge traversal this piece realizes

  static Segment line(Vec2d a, Vec2d b, DartId dart = kNoDart);
  static Segment arc(Vec2d center, double radius, double startAngle, double sweep,
                     DartId dart = kNoDart);
  static Segment cubic(Vec2d p0, Vec2d p1, Vec2d p2, Vec2d p3, DartId dart = kNoDart);

  Vec2d point(double t) const;
  Vec2d velocity(double t) const;       // d/dt, nonvanishing on regular pieces
  Vec2d acceleration(double t) const;
  Vec2d tangent(double t) const;        // unit
  double length_estimate() const;
};

/// A closed C1 regular chain of segments.
struct PiecewiseCurve {
  std::vector<Segment> segments;

  Vec2d start() const { return segments.front().point(0.0); }
  bool empty() const { return segments.empty(); }
};

struct CurveTolerances {
  double eps = 1e-9;          // coordinate tolerance of the drawing
  double angularEps = 1e-6;   // tangent match at joints, radians
  double tangentialAngle = 1e-4;  // crossings with smaller angles are non-generic
};

/// Signed curvature of a segment at parameter t: 0 on lines, sign(sweep)/r on
/// arcs, the rational expression cross(B', B'') / |B'|^3 on cubics.
double signed_curvature(const Segment& seg, double t);

/// Checks chaining, C1 joints and regularity; throws GeometryError.
void check_curve(const PiecewiseCurve& c, const CurveTolerances& tol = {});

struct InflectionLocation {
  int segment = 0;
  double t = 0;
  Vec2d point;
  DartId dart = kNoDart;
};

struct InflectionReport {
  int total = 0;
  std::vector<int> perSegment;
  std::map<DartId, int> perDart;
  std::vector<InflectionLocation> locations;
};

/// Counts sign changes of the signed curvature around the closed curve.  A
/// maximal zero-curvature run counts as one inflection iff the signs on its
/// two sides differ; that equals the inflection count of any generic C2
/// perturbation.
InflectionReport count_inflections(const PiecewiseCurve& c, const CurveTolerances& tol = {});

int total_inflections(const std::vector<PiecewiseCurve>& curves,
                      const CurveTolerances& tol = {});

/// One transversal intersection point between two curve passes.
struct CrossingPoint {
  Vec2d point;
  // (curve, segment, parameter) of the two passes, each given at its incoming
  // position; tangents of the two branches at the point.
  int curve1 = 0, seg1 = 0;
  double t1 = 0;
  int curve2 = 0, seg2 = 0;
  double t2 = 0;
  Vec2d tan1, tan2;
};

struct IntersectionReport {
  std::vector<CrossingPoint> crossings;
  std::vector<std::string> warnings;  // tangential near-misses within eps
};

/// All transversal intersection points among and within the given closed
/// curves.  Candidates come from adaptive flattening; each is refined on the
/// exact pieces (closed forms for line/arc pairs, Newton for cubics).
/// Tangential contacts (branch angle below tol.tangentialAngle) raise
/// GeometryError: the drawing is non-generic.
IntersectionReport self_intersections(const std::vector<PiecewiseCurve>& curves,
                                      const CurveTolerances& tol = {});

/// Result of rebuilding the combinatorial structure of a drawing.
struct ReconstructedMap {
  Doodle doodle;
  // For every dart: the curve and the segment span [segFrom, segTo) with
  // parameter window it realizes, in travel direction.
  struct DartGeometry {
    int curve = -1;
    double fromSeg = 0;  // position along the curve as (segment + t)
    double toSeg = 0;
    bool forward = true;
  };
  std::map<DartId, DartGeometry> geometry;
  std::vector<CrossingPoint> crossings;
};

/// Builds the doodle realized by a drawing: crossings become vertices, curve
/// arcs between crossings become edges, rotations come from the tangent
/// directions, the outer face from an extreme point, and nesting from
/// winding-number containment tests.
ReconstructedMap reconstruct_map(const std::vector<PiecewiseCurve>& curves,
                                 const CurveTolerances& tol = {});

/// Flattens a segment into a polyline with sagitta below `sag`.
std::vector<Vec2d> flatten_segment(const Segment& seg, double sag);

/// Diameter-ish scale of a set of curves (bounding box diagonal).
double drawing_scale(const std::vector<PiecewiseCurve>& curves);

// ---- Rigid/similarity transforms ----

struct Similarity {
  double scale = 1.0;
  double rotate = 0.0;  // radians, applied after reflection
  Vec2d translate = Vec2d::Zero();
  bool reflect = false;  // about the x axis, applied first

  Vec2d apply(const Vec2d& p) const {
    Vec2d q = reflect ? Vec2d(p.x(), -p.y()) : p;
    Vec2d r(q.x() * std::cos(rotate) - q.y() * std::sin(rotate),
            q.x() * std::sin(rotate) + q.y() * std::cos(rotate));
    return scale * r + translate;
  }
};

Segment transformed(const Segment& s, const Similarity& T);
PiecewiseCurve transformed(const PiecewiseCurve& c, const Similarity& T);

// ---- Arc-chain construction ----

/// One piece of an arc chain under construction: an arc with a fixed signed
/// sweep whose radius is solved for (radii are shared within a radius group),
/// or a straight piece of fixed length.
struct ChainPiece {
  static ChainPiece arc(double sweep, int radiusGroup) {
    return {true, sweep, radiusGroup, 0.0, 0.0};
  }
  static ChainPiece arc_fixed(double sweep, double radius) {
    return {true, sweep, -1, 0.0, radius};
  }
  static ChainPiece straight(double length) { return {false, 0.0, -1, length, 0.0}; }
  bool isArc = true;
  double sweep = 0;
  int radiusGroup = 0;  // -1: radius fixed
  double length = 0;
  double fixedRadius = 0;
};

/// Builds a C1 chain from `from` (tangent `fromTan`) to `to` whose tangent
/// turns by exactly the sum of the sweeps.  The displacement is linear in the
/// group radii, so the two radius groups are solved from a 2x2 linear system.
/// Returns nullopt when the system is singular or yields nonpositive radii.
std::optional<std::vector<Segment>> solve_arc_chain(const Vec2d& from, double fromTan,
                                                    const Vec2d& to,
                                                    const std::vector<ChainPiece>& pieces,
                                                    DartId dart = kNoDart);

/// A closed loop ("teardrop") leaving `anchor` with tangent `tan0`, turning a
/// total of `turn` (sign = side), and returning to `anchor`.  All curvature on
/// the loop has sign(turn); a straight apex piece is included so later
/// surgeries can host on it.  `size` controls the loop's extent.
std::optional<std::vector<Segment>> teardrop(const Vec2d& anchor, double tan0, double turn,
                                             double size, DartId dart = kNoDart);

}  // namespace doodle
