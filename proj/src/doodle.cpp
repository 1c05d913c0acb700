#include "doodle/doodle.hpp"

#include <map>

namespace doodle {

ValidationReport validate(const Doodle& d) {
  ValidationReport rep;
  const CombinatorialMap& m = d.map;

  try {
    m.check_structure();
  } catch (const MapError& e) {
    rep.fail("map-structure", e.what());
    return rep;
  }

  for (DartId x : m.darts()) {
    if (m.alpha(x) == x) rep.fail("alpha-fixed-point", "dart " + std::to_string(x));
  }
  if (!rep.ok) return rep;

  for (const auto& v : m.vertices()) {
    if (v.size() != 4)
      rep.fail("vertex-valency", "vertex at dart " + std::to_string(v[0]) + " has valency " +
                                     std::to_string(v.size()));
  }

  // Euler characteristic per connected component.
  auto comp = m.component_of_darts();
  int ncomp = m.component_count();
  std::vector<int> V(ncomp, 0), E(ncomp, 0), F(ncomp, 0);
  for (const auto& v : m.vertices()) V[comp[v[0]]]++;
  for (const auto& e : m.edge_list()) E[comp[e[0]]]++;
  for (const auto& f : m.faces()) F[comp[f[0]]]++;
  for (int c = 0; c < ncomp; ++c) {
    if (V[c] - E[c] + F[c] != 2)
      rep.fail("euler", "component " + std::to_string(c) + ": V-E+F = " +
                            std::to_string(V[c] - E[c] + F[c]));
  }

  // Outward faces: one per component, in the right component.
  if (static_cast<int>(d.outerFaceRep.size()) != ncomp) {
    rep.fail("outer-face-count", "have " + std::to_string(d.outerFaceRep.size()) +
                                     " outward faces for " + std::to_string(ncomp) +
                                     " components");
  } else {
    for (int c = 0; c < ncomp; ++c) {
      DartId r = d.outerFaceRep[c];
      if (!m.alive(r))
        rep.fail("outer-face", "component " + std::to_string(c) + ": dead representative");
      else if (comp[r] != c)
        rep.fail("outer-face", "component " + std::to_string(c) +
                                   ": representative dart in component " +
                                   std::to_string(comp[r]));
    }
  }

  if (static_cast<int>(d.nesting.size()) != ncomp)
    rep.fail("nesting-count", "have " + std::to_string(d.nesting.size()) +
                                  " nesting entries for " + std::to_string(ncomp) +
                                  " components");

  // Containment references exist; forest is acyclic.
  // Nodes: components 0..ncomp-1, then free loops ncomp..ncomp+k-1.
  int total = ncomp + static_cast<int>(d.freeLoops.size());
  std::vector<int> parent(total, -1);
  auto resolve = [&](const Containment& in, const std::string& who) -> int {
    switch (in.kind) {
      case Containment::Kind::Root:
        return -1;
      case Containment::Kind::Face:
        if (!m.alive(in.faceDart)) {
          rep.fail("nesting-ref", who + ": containing face dart is dead");
          return -1;
        }
        return comp[in.faceDart];
      case Containment::Kind::FreeLoop:
        if (in.freeLoop < 0 || in.freeLoop >= static_cast<int>(d.freeLoops.size())) {
          rep.fail("nesting-ref", who + ": no such free loop");
          return -1;
        }
        return ncomp + in.freeLoop;
    }
    return -1;
  };
  for (int c = 0; c < ncomp && c < static_cast<int>(d.nesting.size()); ++c) {
    parent[c] = resolve(d.nesting[c], "component " + std::to_string(c));
    if (parent[c] == c) rep.fail("nesting-cycle", "component " + std::to_string(c) + " inside itself");
  }
  for (size_t i = 0; i < d.freeLoops.size(); ++i)
    parent[ncomp + i] = resolve(d.freeLoops[i].in, "freeloop " + d.freeLoops[i].name);
  for (int start = 0; start < total; ++start) {
    int x = start, steps = 0;
    while (x >= 0 && steps <= total) {
      x = parent[x];
      ++steps;
    }
    if (steps > total) {
      rep.fail("nesting-cycle", "containment forest has a cycle");
      break;
    }
  }

  return rep;
}

std::vector<std::vector<DartId>> strands(const Doodle& d) {
  const CombinatorialMap& m = d.map;
  std::vector<char> used(m.capacity(), 0);
  std::vector<std::vector<DartId>> out;
  for (DartId d0 : m.darts()) {
    if (used[d0]) continue;
    std::vector<DartId> strand;
    DartId x = d0;
    do {
      if (used[x]) throw MapError("strand traversal revisits dart " + std::to_string(x));
      strand.push_back(x);
      strand.push_back(m.alpha(x));
      used[x] = used[m.alpha(x)] = 1;
      x = m.strand_next(x);
    } while (x != d0);
    out.push_back(std::move(strand));
  }
  return out;
}

int curve_count(const Doodle& d) {
  return static_cast<int>(strands(d).size() + d.freeLoops.size());
}

int face_index_of_dart(const CombinatorialMap& m, DartId d) {
  auto fs = m.faces();
  for (size_t i = 0; i < fs.size(); ++i)
    for (DartId x : fs[i])
      if (x == d) return static_cast<int>(i);
  throw MapError("face_index_of_dart: dart not found");
}

DartId face_rep_of_index(const CombinatorialMap& m, int index) {
  auto fs = m.faces();
  if (index < 0 || index >= static_cast<int>(fs.size()))
    throw MapError("face index " + std::to_string(index) + " out of range");
  return fs[index][0];
}

int component_of_dart(const CombinatorialMap& m, DartId d) {
  return m.component_of_darts()[d];
}

Doodle mirrored(const Doodle& d) {
  Doodle out = d;
  // Reverse every rotation.
  for (DartId x : d.map.darts()) out.map.set_sigma(d.map.sigma(x), x);
  // A face "left of dart x" becomes, in the mirror, the face of alpha(x).
  for (DartId& r : out.outerFaceRep) r = d.map.alpha(r);
  for (Containment* c : [&] {
         std::vector<Containment*> ptrs;
         for (auto& n : out.nesting) ptrs.push_back(&n);
         for (auto& f : out.freeLoops) ptrs.push_back(&f.in);
         return ptrs;
       }()) {
    if (c->kind == Containment::Kind::Face) c->faceDart = d.map.alpha(c->faceDart);
  }
  return out;
}

}  // namespace doodle
