#pragma once

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace doodle {

/// Exact coordinates for the straight-line embedding stage.  Everything the
/// planarity checks decide is decided over the rationals.
using Rational = boost::multiprecision::cpp_rational;

template <typename S>
using Vec2 = Eigen::Matrix<S, 2, 1>;

using Vec2d = Vec2<double>;
using Vec2q = Vec2<Rational>;

template <typename S>
S cross2(const Vec2<S>& a, const Vec2<S>& b) {
  return a.x() * b.y() - a.y() * b.x();
}

/// Sign of the turn a -> b -> c: +1 left (counterclockwise), -1 right, 0 collinear.
template <typename S>
int orient(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c) {
  S d = cross2<S>(b - a, c - a);
  if (d > 0) return 1;
  if (d < 0) return -1;
  return 0;
}

/// Closed-segment intersection test, exact for exact scalars.  Shared
/// endpoints count as intersections; callers filter those.
template <typename S>
bool segments_intersect(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& c,
                        const Vec2<S>& d) {
  auto onSegment = [](const Vec2<S>& p, const Vec2<S>& q, const Vec2<S>& r) {
    // r collinear with pq; is it inside the box?
    using std::max;
    using std::min;
    return min(p.x(), q.x()) <= r.x() && r.x() <= max(p.x(), q.x()) &&
           min(p.y(), q.y()) <= r.y() && r.y() <= max(p.y(), q.y());
  };
  int o1 = orient<S>(a, b, c), o2 = orient<S>(a, b, d);
  int o3 = orient<S>(c, d, a), o4 = orient<S>(c, d, b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && onSegment(a, b, c)) return true;
  if (o2 == 0 && onSegment(a, b, d)) return true;
  if (o3 == 0 && onSegment(c, d, a)) return true;
  if (o4 == 0 && onSegment(c, d, b)) return true;
  return false;
}

/// Squared distance from point r to segment ab.
template <typename S>
S segment_dist2(const Vec2<S>& a, const Vec2<S>& b, const Vec2<S>& r) {
  Vec2<S> ab = b - a, ar = r - a;
  S len2 = ab.squaredNorm();
  if (len2 == S(0)) return ar.squaredNorm();
  S t = ar.dot(ab);
  if (t <= S(0)) return ar.squaredNorm();
  if (t >= len2) return (r - b).squaredNorm();
  // distance^2 = |ar|^2 - t^2/len2, kept rational-friendly
  return ar.squaredNorm() - t * t / len2;
}

inline double angle_of(const Vec2d& v) { return std::atan2(v.y(), v.x()); }

inline Vec2d unit_dir(double angle) { return Vec2d(std::cos(angle), std::sin(angle)); }

/// Normalizes an angle into (-pi, pi].
inline double norm_angle(double a) {
  while (a > M_PI) a -= 2 * M_PI;
  while (a <= -M_PI) a += 2 * M_PI;
  return a;
}

inline Vec2d rot90(const Vec2d& v) { return Vec2d(-v.y(), v.x()); }

}  // namespace doodle
