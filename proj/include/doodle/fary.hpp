#pragma once

#include <map>

#include "doodle/doodle.hpp"
#include "doodle/geom.hpp"

namespace doodle {

/// Straight-line plane drawing of a simple graph with exact rational
/// coordinates.  The counterclockwise order of edges around each vertex
/// equals sigma and the designated outer face is unbounded.
struct StraightDrawing {
  CombinatorialMap graph;
  DartId outerFaceRep = kNoDart;
  std::vector<Vec2q> pos;  // per dart: the position of the dart's vertex

  Vec2q vertex_pos(DartId d) const { return pos[d]; }
  Vec2d vertex_pos_d(DartId d) const {
    return Vec2d(static_cast<double>(pos[d].x()), static_cast<double>(pos[d].y()));
  }

  /// Per vertex (keyed by every dart of it): distance to the nearest
  /// non-incident segment or adjacent vertex.  Smoothing disks of this radius
  /// cannot create spurious crossings.
  std::vector<double> clearance;
};

/// Straight-line embedding of a simple, connected, bridgeless planar map with
/// at least three vertices, realizing the given rotation system with the
/// designated face unbounded.  Internally triangulates with scaffolding and
/// solves the barycentric (Tutte) system over the rationals, so the result is
/// decision-exact; scaffolding is removed afterwards.
StraightDrawing embed(const CombinatorialMap& g, DartId outerFaceRep);

/// Independent exact checker: pairwise segment crossings, rotation order by
/// angular sorting, and the unbounded face via an extreme vertex.
ValidationReport verify_straight_drawing(const StraightDrawing& s);

}  // namespace doodle
