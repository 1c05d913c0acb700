#pragma once

#include <optional>
#include <string>
#include <vector>

#include "doodle/doodle.hpp"

namespace doodle {

/// Canonical string of a doodle under orientation-PRESERVING isomorphism.
/// Components are relabeled by breadth-first search minimized over starting
/// darts; the outward face, the nesting forest and free loops are folded in.
/// Two doodles are orientation-preservingly isomorphic iff their strings match.
std::string canonical_string_oriented(const Doodle& d);

/// Canonical form under plane diffeomorphisms (reflections allowed): the
/// lexicographic minimum of the oriented string and the mirror's.
std::string canonical_string(const Doodle& d);

/// Dart bijection preserving sigma, alpha, outward face and nesting, allowing
/// a global orientation reversal.
bool map_isomorphic(const Doodle& a, const Doodle& b);

/// Explicit dart bijection between two CONNECTED one-component doodles (no
/// free loops), orientation-preserving only when mirror == false.
/// Returns a vector indexed by a's dart ids with b's dart ids (dead slots -1),
/// or nullopt.
std::optional<std::vector<DartId>> component_isomorphism(const CombinatorialMap& a,
                                                         DartId outerA,
                                                         const CombinatorialMap& b,
                                                         DartId outerB, bool allowMirror,
                                                         bool* usedMirror = nullptr);

/// BFS relabeling of one component from a start dart: labels[d] = discovery
/// rank, exploring sigma before alpha.  Only darts of start's component get
/// labels; others stay -1.
std::vector<int> bfs_labels(const CombinatorialMap& m, DartId start);

}  // namespace doodle
