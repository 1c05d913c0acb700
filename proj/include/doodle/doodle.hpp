#pragma once

#include <optional>
#include <string>
#include <vector>

#include "doodle/map.hpp"

namespace doodle {

/// Where a map component or free loop sits in the plane.
struct Containment {
  enum class Kind { Root, Face, FreeLoop };
  Kind kind = Kind::Root;
  DartId faceDart = kNoDart;  // any dart of the containing face (kind == Face)
  int freeLoop = -1;          // index of the containing free loop (kind == FreeLoop)

  static Containment root() { return {}; }
  static Containment in_face(DartId d) { return {Kind::Face, d, -1}; }
  static Containment in_free_loop(int i) { return {Kind::FreeLoop, kNoDart, i}; }

  bool operator==(const Containment&) const = default;
};

/// A crossing-free circle component.  It has no darts, so it is tracked by
/// name with the region that contains it.
struct FreeLoop {
  std::string name;
  Containment in;
};

/// A doodle: a 4-regular plane map (the crossings and arcs of a collection of
/// closed curves) plus the data pinning its embedding in the plane — one
/// outward face per component, the nesting forest, and the free loops.
/// Strands pair rotation-opposite darts at every crossing.
struct Doodle {
  CombinatorialMap map;
  /// Outward (unbounded-side) face of each map component, as a representative
  /// dart, indexed by component (components ordered by lowest dart id).
  std::vector<DartId> outerFaceRep;
  /// Containment of each map component, indexed like outerFaceRep.
  std::vector<Containment> nesting;
  std::vector<FreeLoop> freeLoops;

  int n() const { return map.vertex_count(); }  // number of double points
};

struct Violation {
  std::string rule;
  std::string where;
};

struct ValidationReport {
  bool ok = true;
  std::vector<Violation> violations;

  void fail(std::string rule, std::string where) {
    ok = false;
    violations.push_back({std::move(rule), std::move(where)});
  }
};

/// Checks all doodle axioms: alpha a fixed-point-free involution, every vertex
/// 4-valent, Euler characteristic 2 per component, outward faces and nesting
/// well formed, nesting forest acyclic.  Reports instead of throwing.
ValidationReport validate(const Doodle& d);

/// Closed strands of a doodle: each strand is the cyclic dart sequence
/// (x0, alpha(x0), x1, alpha(x1), ...) with x_{i+1} = strand_next(x_i).
/// Every dart appears in exactly one strand.  Deterministic: each strand
/// starts at its lowest dart, strands ordered by that dart.
std::vector<std::vector<DartId>> strands(const Doodle& d);

/// Number of curves in the doodle (strands plus free loops).
int curve_count(const Doodle& d);

/// Representative dart -> global face index under the deterministic face
/// enumeration, and back.
int face_index_of_dart(const CombinatorialMap& m, DartId d);
DartId face_rep_of_index(const CombinatorialMap& m, int index);

/// Component index of a dart (components ordered by lowest dart id).
int component_of_dart(const CombinatorialMap& m, DartId d);

/// The doodle with every rotation reversed (a mirror image).  Face
/// representatives are carried through alpha so they denote the same region.
Doodle mirrored(const Doodle& d);

}  // namespace doodle
