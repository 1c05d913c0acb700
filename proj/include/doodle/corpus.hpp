#pragma once

#include <cstdint>
#include <vector>

#include "doodle/doodle.hpp"

namespace doodle {

struct CorpusSpec {
  std::uint64_t seed = 1;
  int size = 200;
  int maxN = 10;
  enum class Mode { ExhaustiveSmall, RandomMoves } mode = Mode::ExhaustiveSmall;
};

/// All connected doodles with at most maxN double points, up to map
/// isomorphism (reflections included), grown by move closure from the circle:
/// add a loop on an edge (either side) and split a crossing into a bigon pair.
/// Every connected doodle with n <= 5 is reachable this way because each one
/// carries a face of length 1 or 2; larger irreducible doodles (octahedron and
/// beyond) are out of this generator's range by construction.
std::vector<Doodle> exhaustive_connected(int maxN);

/// Seeded random connected doodles via random move sequences; deterministic.
std::vector<Doodle> random_corpus(std::uint64_t seed, int count, int maxN);

std::vector<Doodle> generate_corpus(const CorpusSpec& spec);

/// Independent oracle: enumerates all connected doodles with exactly n <= 3
/// crossings by brute force over edge involutions with a fixed rotation
/// scheme, then over outer-face choices.  Returns canonical-form
/// deduplicated doodles.
std::vector<Doodle> brute_force_connected(int n);

}  // namespace doodle
