#pragma once

#include <map>
#include <optional>
#include <vector>

#include "doodle/doodle.hpp"

namespace doodle {

/// One reduction step, with everything needed to undo it exactly (the undone
/// map has the original dart ids) and to reinsert it geometrically.
struct Reduction {
  enum class Kind { Loop1, Bigon };
  Kind kind = Kind::Loop1;

  // ---- Loop1: a bounded face {l} of length 1 ----
  // Rotation at the removed vertex is (l, al, p, q) counterclockwise with
  // alpha(l) = al.  The reduced map glues alpha(pPrime) = qPrime; the petal's
  // region merges into the face on the LEFT of pPrime.
  DartId l = kNoDart, al = kNoDart, p = kNoDart, q = kNoDart;
  DartId pPrime = kNoDart, qPrime = kNoDart;
  // The component was a figure-eight map (alpha(p) == q) and collapses to a
  // free loop.  petalIntoDisk: on reinsertion the petal carves into the
  // circle's bounded side.
  bool collapse = false;
  bool petalIntoDisk = false;
  int freeLoopIndex = -1;  // index of the free loop created by a collapse

  // ---- Bigon: a bounded face {d1, d2} of length 2 with distinct endpoints ----
  // Rotations: A = (d1, ad2, a1, a2), B = (d2, ad1, b1, b2).  Contraction
  // makes one vertex with rotation (a1, a2, b1, b2); the un-contraction splits
  // it back so that the A-side keeps {a1, a2}.
  DartId d1 = kNoDart, ad1 = kNoDart, d2 = kNoDart, ad2 = kNoDart;
  DartId a1 = kNoDart, a2 = kNoDart, b1 = kNoDart, b2 = kNoDart;

  // ---- Undo data (filled by apply_reduction) ----
  struct SavedContainment {
    bool isFreeLoop = false;
    DartId compDart = kNoDart;  // a dart of the component, surviving the reduction
    int flIndex = -1;
    Containment before;
  };
  DartId savedOuterRep = kNoDart;  // outward rep of the affected component, pre-reduction
  Containment savedNesting;
  std::vector<SavedContainment> savedContainments;
};

struct ReductionTrace {
  std::vector<Reduction> steps;
  int initialN = 0;
};

/// The doodle whose bounded faces all have length >= 2... the spec's reduction
/// dispatch: lowest-face-id length-1 face first, else lowest length-2 face
/// with distinct endpoints.  Outward faces are never reduced.  If the only
/// short bounded faces are repeated-vertex bigons the doodle is flagged
/// terminal (nullopt + *terminalSmallCase = true).
std::optional<Reduction> find_reduction(const Doodle& d, bool* terminalSmallCase = nullptr);

/// Applies the reduction; fills the record's undo data.
Doodle apply_reduction(const Doodle& d, Reduction& r);

/// Exact inverse: restores the pre-reduction doodle with its original dart ids.
Doodle undo_reduction(const Doodle& d, const Reduction& r);

/// Applies reductions until none is found.  Components end as free loops
/// (n = 0) or as irreducible cores whose bounded faces all have length >= 3.
/// Asserts the absence of triple edges in every reduced connected core.
std::pair<Doodle, ReductionTrace> reduce_fully(const Doodle& d);

/// Throws if two vertices of the (sub)map are joined by >= 3 parallel edges.
void assert_no_triple_edges(const CombinatorialMap& m);

/// Fake-vertex subdivision data: for every core dart, the travel-ordered chain
/// of subdivided darts realizing that edge traversal.
struct FakeVertexPlan {
  std::map<DartId, std::vector<DartId>> chainOfDart;
  std::vector<DartId> loopEdges;  // min dart per core edge that is a loop
  int fakeVertexCount = 0;
};

/// Splits loops into three subedges (two fake vertices) and one member of
/// every parallel pair into two (one fake vertex).  The result is a simple
/// graph carrying the same embedding; original dart ids are preserved as the
/// vertex-side dart of the first/last subedge.
std::pair<CombinatorialMap, FakeVertexPlan> subdivide(const Doodle& core);

// ---- Corpus moves (inverse reductions with fresh darts) ----

/// Adds a small loop on the edge of `host`, on the left of host's travel
/// direction if leftOfHost.  n increases by 1.
Doodle add_loop(const Doodle& d, DartId host, bool leftOfHost);

/// Turns free loop `flIndex` into a figure-eight-map component (petal into the
/// circle's bounded side iff intoDisk).  n increases by 1.
Doodle add_loop_on_free_loop(const Doodle& d, int flIndex, bool intoDisk);

/// Splits the 4-valent vertex of `anchor` into two vertices joined by a bigon;
/// the new A-side keeps {anchor, sigma(anchor)}.  n increases by 1.
Doodle split_vertex(const Doodle& d, DartId anchor);

}  // namespace doodle
