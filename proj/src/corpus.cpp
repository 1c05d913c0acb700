#include "doodle/corpus.hpp"

#include <functional>
#include <map>
#include <random>
#include <set>

#include "doodle/canonical.hpp"
#include "doodle/reduce.hpp"

namespace doodle {

namespace {

std::vector<Doodle> moves_of(const Doodle& d) {
  std::vector<Doodle> out;
  if (d.map.dart_count() == 0) {
    for (size_t i = 0; i < d.freeLoops.size(); ++i) {
      out.push_back(add_loop_on_free_loop(d, static_cast<int>(i), false));
      out.push_back(add_loop_on_free_loop(d, static_cast<int>(i), true));
    }
    return out;
  }
  for (DartId x : d.map.darts()) {
    out.push_back(add_loop(d, x, true));
    out.push_back(add_loop(d, x, false));
    out.push_back(split_vertex(d, x));
  }
  return out;
}

}  // namespace

std::vector<Doodle> exhaustive_connected(int maxN) {
  std::vector<Doodle> all;
  std::set<std::string> seen;
  std::vector<Doodle> level{Doodle{}};
  level[0].freeLoops.push_back({"a", Containment::root()});
  seen.insert(canonical_string(level[0]));
  all.push_back(level[0]);

  for (int n = 1; n <= maxN; ++n) {
    std::vector<Doodle> next;
    for (const Doodle& d : level) {
      for (Doodle& m : moves_of(d)) {
        std::string key = canonical_string(m);
        if (seen.insert(key).second) {
          next.push_back(m);
          all.push_back(std::move(m));
        }
      }
    }
    level = std::move(next);
  }
  return all;
}

std::vector<Doodle> random_corpus(std::uint64_t seed, int count, int maxN) {
  std::mt19937_64 rng(seed);
  std::vector<Doodle> out;
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> nd(1, maxN);
    int target = nd(rng);
    Doodle d;
    d.freeLoops.push_back({"a", Containment::root()});
    for (int k = 0; k < target; ++k) {
      if (d.map.dart_count() == 0) {
        std::uniform_int_distribution<int> side(0, 1);
        d = add_loop_on_free_loop(d, 0, side(rng) == 1);
        continue;
      }
      auto darts = d.map.darts();
      std::uniform_int_distribution<size_t> pick(0, darts.size() * 3 - 1);
      size_t c = pick(rng);
      DartId x = darts[c / 3];
      switch (c % 3) {
        case 0: d = add_loop(d, x, true); break;
        case 1: d = add_loop(d, x, false); break;
        default: d = split_vertex(d, x); break;
      }
    }
    out.push_back(std::move(d));
  }
  return out;
}

std::vector<Doodle> generate_corpus(const CorpusSpec& spec) {
  if (spec.mode == CorpusSpec::Mode::ExhaustiveSmall) return exhaustive_connected(spec.maxN);
  return random_corpus(spec.seed, spec.size, spec.maxN);
}

std::vector<Doodle> brute_force_connected(int n) {
  std::vector<Doodle> out;
  std::set<std::string> seen;
  if (n == 0) {
    Doodle d;
    d.freeLoops.push_back({"a", Containment::root()});
    out.push_back(d);
    return out;
  }

  int D = 4 * n;
  std::vector<int> alpha(D, -1);
  auto emit = [&]() {
    Doodle d;
    for (int i = 0; i < D; ++i) d.map.add_dart();
    for (int v = 0; v < n; ++v) d.map.make_vertex({4 * v, 4 * v + 1, 4 * v + 2, 4 * v + 3});
    for (int i = 0; i < D; ++i)
      if (i < alpha[i]) d.map.link_edge(i, alpha[i]);
    if (d.map.component_count() != 1) return;
    if (d.map.vertex_count() - d.map.edge_count() + d.map.face_count() != 2) return;
    int nf = d.map.face_count();
    for (int f = 0; f < nf; ++f) {
      Doodle cand = d;
      cand.outerFaceRep = {face_rep_of_index(cand.map, f)};
      cand.nesting = {Containment::root()};
      if (!validate(cand).ok) continue;
      if (seen.insert(canonical_string(cand)).second) out.push_back(cand);
    }
  };

  std::function<void(int)> rec = [&](int i) {
    while (i < D && alpha[i] >= 0) ++i;
    if (i == D) {
      emit();
      return;
    }
    for (int j = i + 1; j < D; ++j) {
      if (alpha[j] >= 0) continue;
      alpha[i] = j;
      alpha[j] = i;
      rec(i + 1);
      alpha[i] = alpha[j] = -1;
    }
  };
  rec(0);
  return out;
}

}  // namespace doodle
