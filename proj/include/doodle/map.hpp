#pragma once

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>
#include <vector>

namespace doodle {

using DartId = int;
constexpr DartId kNoDart = -1;

/// Structural error in a map, doodle file, or pipeline stage.
class MapError : public std::runtime_error {
 public:
  explicit MapError(const std::string& what) : std::runtime_error(what) {}
};

/// Half-edge (dart) encoding of a graph embedded in the oriented plane.
///
/// sigma(d) is the next dart counterclockwise around d's vertex, alpha(d) the
/// opposite dart of the same edge.  Faces are traced with face_next(d) =
/// sigma^-1(alpha(d)), which walks a face boundary head-to-tail with the face
/// on the left of every dart.  Dart ids are stable: removing a dart leaves a
/// hole that is never reused within one pipeline run, so surgery records can
/// refer to darts across mutations.
class CombinatorialMap {
 public:
  CombinatorialMap() = default;

  DartId add_dart() {
    sigma_.push_back(kNoDart);
    sigma_inv_.push_back(kNoDart);
    alpha_.push_back(kNoDart);
    alive_.push_back(1);
    return static_cast<DartId>(sigma_.size()) - 1;
  }

  /// Re-creates a dart with a specific id (used when undoing reductions).
  void revive_dart(DartId d) {
    while (static_cast<DartId>(sigma_.size()) <= d) {
      sigma_.push_back(kNoDart);
      sigma_inv_.push_back(kNoDart);
      alpha_.push_back(kNoDart);
      alive_.push_back(0);
    }
    if (alive_[d]) throw MapError("revive_dart: dart " + std::to_string(d) + " is alive");
    alive_[d] = 1;
    sigma_[d] = sigma_inv_[d] = alpha_[d] = kNoDart;
  }

  void remove_dart(DartId d) {
    check(d);
    alive_[d] = 0;
    sigma_[d] = sigma_inv_[d] = alpha_[d] = kNoDart;
  }

  bool alive(DartId d) const {
    return d >= 0 && d < static_cast<DartId>(alive_.size()) && alive_[d];
  }

  int capacity() const { return static_cast<int>(sigma_.size()); }

  int dart_count() const {
    return static_cast<int>(std::count(alive_.begin(), alive_.end(), 1));
  }

  DartId sigma(DartId d) const { check(d); return sigma_[d]; }
  DartId sigma_inv(DartId d) const { check(d); return sigma_inv_[d]; }
  DartId alpha(DartId d) const { check(d); return alpha_[d]; }

  /// Next dart of the face walk; the face lies on the left of every walked dart.
  DartId face_next(DartId d) const { return sigma_inv(alpha(d)); }
  DartId face_prev(DartId d) const { return alpha(sigma(d)); }

  /// Rotation-opposite dart at a 4-valent vertex (the same strand's other branch).
  DartId opposite(DartId d) const { return sigma(sigma(d)); }

  /// Strand step: traverse the edge of d, then continue straight through the
  /// crossing at the far end.
  DartId strand_next(DartId d) const { return opposite(alpha(d)); }

  void set_sigma(DartId d, DartId next) {
    check(d);
    check(next);
    sigma_[d] = next;
    sigma_inv_[next] = d;
  }

  void link_edge(DartId a, DartId b) {
    check(a);
    check(b);
    if (a == b) throw MapError("link_edge: alpha fixed point");
    alpha_[a] = b;
    alpha_[b] = a;
  }

  /// Marks a dart as a free (dangling) strand end: alpha(d) = d.  Only valid
  /// for fragments; closed doodles reject fixed points in validation.
  void set_free_end(DartId d) { check(d); alpha_[d] = d; }

  /// Removes an edge, splicing both endpoint rotations.
  void remove_edge(DartId d) {
    DartId e = alpha(d);
    for (DartId x : {d, e}) {
      DartId p = sigma_inv(x), n = sigma(x);
      if (n != x) set_sigma(p, n);
      remove_dart(x);
    }
  }

  /// Installs a full counterclockwise rotation at a vertex.
  void make_vertex(const std::vector<DartId>& ccw) {
    for (size_t i = 0; i < ccw.size(); ++i) set_sigma(ccw[i], ccw[(i + 1) % ccw.size()]);
  }

  std::vector<DartId> darts() const {
    std::vector<DartId> out;
    for (DartId d = 0; d < capacity(); ++d)
      if (alive_[d]) out.push_back(d);
    return out;
  }

  /// Full counterclockwise rotation at the vertex of d, starting at d.
  std::vector<DartId> vertex_of(DartId d) const {
    return orbit(d, [this](DartId x) { return sigma(x); });
  }

  /// Face walk starting at d (face on the left).
  std::vector<DartId> face_of(DartId d) const {
    return orbit(d, [this](DartId x) { return face_next(x); });
  }

  /// Orbit enumerations, deterministic: each orbit starts at its lowest dart,
  /// orbits ordered by that dart.
  std::vector<std::vector<DartId>> vertices() const {
    return orbits([this](DartId d) { return sigma(d); });
  }
  std::vector<std::vector<DartId>> faces() const {
    return orbits([this](DartId d) { return face_next(d); });
  }
  std::vector<std::vector<DartId>> edge_list() const {
    std::vector<std::vector<DartId>> out;
    for (DartId d : darts())
      if (d <= alpha_[d]) out.push_back({d, alpha_[d]});
    return out;
  }

  int vertex_count() const { return static_cast<int>(vertices().size()); }
  int edge_count() const {
    int n = 0;
    for (DartId d : darts())
      if (d < alpha_[d]) ++n;
    return n;
  }
  int face_count() const { return static_cast<int>(faces().size()); }

  /// Component index per dart (components ordered by their lowest dart id).
  /// Components connect through both sigma and alpha.
  std::vector<int> component_of_darts() const {
    std::vector<int> comp(capacity(), -1);
    int next = 0;
    for (DartId d = 0; d < capacity(); ++d) {
      if (!alive_[d] || comp[d] >= 0) continue;
      std::vector<DartId> stack{d};
      comp[d] = next;
      while (!stack.empty()) {
        DartId x = stack.back();
        stack.pop_back();
        for (DartId y : {sigma_[x], alpha_[x]}) {
          if (y >= 0 && alive(y) && comp[y] < 0) {
            comp[y] = next;
            stack.push_back(y);
          }
        }
      }
      ++next;
    }
    return comp;
  }

  int component_count() const {
    auto c = component_of_darts();
    int m = 0;
    for (DartId d = 0; d < capacity(); ++d)
      if (alive_[d]) m = std::max(m, c[d] + 1);
    return m;
  }

  /// Structural sanity: permutation arrays consistent, alpha an involution.
  /// Throws on malformed state (distinct from doodle-level validation).
  void check_structure() const {
    for (DartId d = 0; d < capacity(); ++d) {
      if (!alive_[d]) continue;
      if (!alive(sigma_[d]) || !alive(alpha_[d]) || !alive(sigma_inv_[d]))
        throw MapError("dart " + std::to_string(d) + ": dangling permutation entry");
      if (sigma_inv_[sigma_[d]] != d)
        throw MapError("dart " + std::to_string(d) + ": sigma/sigma_inv mismatch");
      if (alpha_[alpha_[d]] != d)
        throw MapError("dart " + std::to_string(d) + ": alpha not an involution");
    }
  }

 private:
  void check(DartId d) const {
    if (!alive(d)) throw MapError("dead or invalid dart " + std::to_string(d));
  }

  template <typename Next>
  std::vector<DartId> orbit(DartId start, Next next) const {
    std::vector<DartId> cyc;
    DartId x = start;
    do {
      cyc.push_back(x);
      x = next(x);
      if (cyc.size() > sigma_.size()) throw MapError("orbit does not close");
    } while (x != start);
    return cyc;
  }

  template <typename Next>
  std::vector<std::vector<DartId>> orbits(Next next) const {
    std::vector<char> seen(capacity(), 0);
    std::vector<std::vector<DartId>> out;
    for (DartId d = 0; d < capacity(); ++d) {
      if (!alive_[d] || seen[d]) continue;
      auto cyc = orbit(d, next);
      for (DartId x : cyc) seen[x] = 1;
      out.push_back(std::move(cyc));
    }
    return out;
  }

  std::vector<DartId> sigma_, sigma_inv_, alpha_;
  std::vector<char> alive_;
};

}  // namespace doodle
