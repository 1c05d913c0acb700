#include "doodle/reduce.hpp"

#include <algorithm>
#include <set>

namespace doodle {

std::optional<Reduction> find_reduction(const Doodle& d, bool* terminalSmallCase) {
  if (terminalSmallCase) *terminalSmallCase = false;
  const CombinatorialMap& m = d.map;
  auto faces = m.faces();

  std::set<DartId> outward;
  for (DartId rep : d.outerFaceRep)
    for (DartId x : m.face_of(rep)) outward.insert(x);

  std::optional<Reduction> bigon;
  bool sawRepeatedBigon = false;
  for (const auto& f : faces) {
    if (outward.count(f[0])) continue;
    if (f.size() == 1) {
      Reduction r;
      r.kind = Reduction::Kind::Loop1;
      r.l = f[0];
      r.al = m.alpha(r.l);
      if (m.sigma(r.l) != r.al) throw MapError("length-1 face inconsistent with rotation");
      r.p = m.sigma(r.al);
      r.q = m.sigma(r.p);
      if (m.sigma(r.q) != r.l) throw MapError("length-1 face at non-4-valent vertex");
      r.collapse = (m.alpha(r.p) == r.q);
      if (!r.collapse) {
        r.pPrime = m.alpha(r.p);
        r.qPrime = m.alpha(r.q);
      }
      return r;
    }
    if (f.size() == 2 && !bigon) {
      DartId x = f[0], y = f[1];
      auto vx = m.vertex_of(x);
      if (std::find(vx.begin(), vx.end(), y) != vx.end()) {
        sawRepeatedBigon = true;  // both bigon corners at one vertex: the n = 1 configuration
        continue;
      }
      Reduction r;
      r.kind = Reduction::Kind::Bigon;
      r.d1 = x;
      r.d2 = y;
      r.ad1 = m.alpha(x);
      r.ad2 = m.alpha(y);
      if (m.sigma(r.d1) != r.ad2 || m.sigma(r.d2) != r.ad1)
        throw MapError("length-2 face inconsistent with rotations");
      r.a1 = m.sigma(r.ad2);
      r.a2 = m.sigma(r.a1);
      r.b1 = m.sigma(r.ad1);
      r.b2 = m.sigma(r.b1);
      if (m.sigma(r.a2) != r.d1 || m.sigma(r.b2) != r.d2)
        throw MapError("bigon endpoints not 4-valent");
      bigon = r;
    }
  }
  if (bigon) return bigon;
  if (sawRepeatedBigon && terminalSmallCase) *terminalSmallCase = true;
  return std::nullopt;
}

namespace {

struct CompEntry {
  DartId keyDart;  // survives the surgery, identifies the component
  DartId outerRep;
  Containment in;
};

std::string fresh_loop_name(const Doodle& d) {
  int k = 0;
  while (true) {
    std::string name = "loop" + std::to_string(k++);
    bool taken = false;
    for (const auto& fl : d.freeLoops) taken = taken || fl.name == name;
    if (!taken) return name;
  }
}

}  // namespace

Doodle apply_reduction(const Doodle& din, Reduction& r) {
  const CombinatorialMap& m = din.map;
  auto compOf = m.component_of_darts();
  int ncomp = m.component_count();

  const bool isLoop = r.kind == Reduction::Kind::Loop1;
  const DartId anchor = isLoop ? r.l : r.d1;
  const int affected = compOf[anchor];
  std::set<DartId> removed = isLoop ? std::set<DartId>{r.l, r.al, r.p, r.q}
                                    : std::set<DartId>{r.d1, r.ad1, r.d2, r.ad2};
  const bool collapse = isLoop && r.collapse;

  r.savedOuterRep = din.outerFaceRep[affected];
  r.savedNesting = din.nesting[affected];
  r.savedContainments.clear();

  // Collapse side classification.  The dying figure-eight has faces {l},
  // {p} and {al, q}; the surviving circle separates side P (the {p} region)
  // from side Q ({l} merged with {al, q}).  Its bounded side is the one not
  // holding the outward face.
  bool outwardIsP = false;
  if (collapse) {
    auto faceP = m.face_of(r.p);
    outwardIsP =
        std::find(faceP.begin(), faceP.end(), din.outerFaceRep[affected]) != faceP.end();
    r.petalIntoDisk = outwardIsP;
    r.freeLoopIndex = static_cast<int>(din.freeLoops.size());
  }

  // Face representative updates.  A rep whose dart dies moves to any survivor
  // on the same pre-surgery face (same region); a rep on a vanishing face
  // follows the region it merges into.
  auto updateRep = [&](DartId rep) -> DartId {
    if (!removed.count(rep)) return rep;
    for (DartId x : m.face_of(rep))
      if (!removed.count(x)) return x;
    if (isLoop && !collapse) return r.pPrime;  // the petal merges left of pPrime
    if (!isLoop) return r.a1;                  // the lens pinches away
    return kNoDart;                            // collapse: whole component gone
  };
  auto inDiskSide = [&](DartId faceDart) {
    bool inP = std::find(m.face_of(r.p).begin(), m.face_of(r.p).end(), faceDart) !=
               m.face_of(r.p).end();
    return outwardIsP ? !inP : inP;
  };

  // Component entries keyed by surviving darts.
  std::vector<CompEntry> entries;
  std::vector<DartId> keyOf(ncomp, kNoDart);
  for (DartId x : m.darts())
    if (keyOf[compOf[x]] == kNoDart && !removed.count(x)) keyOf[compOf[x]] = x;
  for (int c = 0; c < ncomp; ++c) {
    if (keyOf[c] == kNoDart) continue;  // component fully removed (collapse)
    entries.push_back({keyOf[c], updateRep(din.outerFaceRep[c]), din.nesting[c]});
  }

  Doodle out;
  out.map = m;
  out.freeLoops = din.freeLoops;

  auto retarget = [&](Containment& c, bool isFl, DartId compKey, int flIdx) {
    if (c.kind != Containment::Kind::Face) return;
    Containment before = c;
    if (collapse && compOf[c.faceDart] == affected) {
      c = inDiskSide(c.faceDart) ? Containment::in_free_loop(r.freeLoopIndex)
                                 : din.nesting[affected];
      r.savedContainments.push_back({isFl, compKey, flIdx, before});
      return;
    }
    DartId nr = updateRep(c.faceDart);
    if (nr != c.faceDart) {
      // Region-preserving walks need no undo record; merges do.
      bool merged = removed.count(c.faceDart) && [&] {
        for (DartId x : m.face_of(c.faceDart))
          if (!removed.count(x)) return false;
        return true;
      }();
      if (merged) r.savedContainments.push_back({isFl, compKey, flIdx, before});
      c.faceDart = nr;
    }
  };
  for (auto& e : entries) retarget(e.in, false, e.keyDart, -1);
  for (size_t i = 0; i < out.freeLoops.size(); ++i)
    retarget(out.freeLoops[i].in, true, kNoDart, static_cast<int>(i));

  if (collapse) out.freeLoops.push_back({fresh_loop_name(din), din.nesting[affected]});

  // The surgery.
  for (DartId x : removed) out.map.remove_dart(x);
  if (isLoop && !collapse) out.map.link_edge(r.pPrime, r.qPrime);
  if (!isLoop) out.map.make_vertex({r.a1, r.a2, r.b1, r.b2});

  // Rebuild positional component arrays.
  auto comp2 = out.map.component_of_darts();
  int ncomp2 = out.map.component_count();
  out.outerFaceRep.assign(ncomp2, kNoDart);
  out.nesting.assign(ncomp2, Containment::root());
  for (const auto& e : entries) {
    int c = comp2[e.keyDart];
    out.outerFaceRep[c] = e.outerRep;
    out.nesting[c] = e.in;
  }
  return out;
}

Doodle undo_reduction(const Doodle& din, const Reduction& r) {
  const bool isLoop = r.kind == Reduction::Kind::Loop1;
  const bool collapse = isLoop && r.collapse;

  Doodle out;
  out.map = din.map;
  out.freeLoops = din.freeLoops;

  if (collapse) {
    if (r.freeLoopIndex != static_cast<int>(out.freeLoops.size()) - 1)
      throw MapError("undo_reduction: collapse free loop is not the last one");
    out.freeLoops.pop_back();
  }

  // Preserve existing component data keyed by darts.
  auto compOld = din.map.component_of_darts();
  std::vector<CompEntry> entries;
  {
    int ncomp = din.map.component_count();
    std::vector<DartId> keyOf(ncomp, kNoDart);
    for (DartId x : din.map.darts())
      if (keyOf[compOld[x]] == kNoDart) keyOf[compOld[x]] = x;
    for (int c = 0; c < ncomp; ++c)
      entries.push_back({keyOf[c], din.outerFaceRep[c], din.nesting[c]});
  }

  for (DartId x : isLoop ? std::vector<DartId>{r.l, r.al, r.p, r.q}
                         : std::vector<DartId>{r.d1, r.ad1, r.d2, r.ad2})
    out.map.revive_dart(x);

  if (isLoop) {
    out.map.make_vertex({r.l, r.al, r.p, r.q});
    out.map.link_edge(r.l, r.al);
    if (collapse) {
      out.map.link_edge(r.p, r.q);
      entries.push_back({r.l, r.savedOuterRep, r.savedNesting});
    } else {
      out.map.link_edge(r.p, r.pPrime);
      out.map.link_edge(r.q, r.qPrime);
    }
  } else {
    out.map.make_vertex({r.d1, r.ad2, r.a1, r.a2});
    out.map.make_vertex({r.d2, r.ad1, r.b1, r.b2});
    out.map.link_edge(r.d1, r.ad1);
    out.map.link_edge(r.d2, r.ad2);
  }

  auto compNew = out.map.component_of_darts();
  if (!collapse) {
    for (auto& e : entries)
      if (compNew[e.keyDart] == compNew[isLoop ? r.l : r.d1]) {
        e.outerRep = r.savedOuterRep;
        e.in = r.savedNesting;
      }
  }
  for (const auto& sc : r.savedContainments) {
    if (sc.isFreeLoop) {
      out.freeLoops[sc.flIndex].in = sc.before;
    } else {
      for (auto& e : entries)
        if (compNew[e.keyDart] == compNew[sc.compDart]) e.in = sc.before;
    }
  }

  int ncomp2 = out.map.component_count();
  out.outerFaceRep.assign(ncomp2, kNoDart);
  out.nesting.assign(ncomp2, Containment::root());
  for (const auto& e : entries) {
    int c = compNew[e.keyDart];
    out.outerFaceRep[c] = e.outerRep;
    out.nesting[c] = e.in;
  }
  return out;
}

std::pair<Doodle, ReductionTrace> reduce_fully(const Doodle& din) {
  Doodle d = din;
  ReductionTrace trace;
  trace.initialN = d.n();
  while (auto r = find_reduction(d)) {
    Reduction step = *r;
    d = apply_reduction(d, step);
    trace.steps.push_back(step);
  }
  assert_no_triple_edges(d.map);
  return {d, trace};
}

void assert_no_triple_edges(const CombinatorialMap& m) {
  auto vs = m.vertices();
  std::vector<int> vidx(m.capacity(), -1);
  for (size_t i = 0; i < vs.size(); ++i)
    for (DartId x : vs[i]) vidx[x] = static_cast<int>(i);
  std::map<std::pair<int, int>, int> mult;
  for (const auto& e : m.edge_list()) {
    int u = vidx[e[0]], v = vidx[e[1]];
    if (u == v) continue;
    mult[{std::min(u, v), std::max(u, v)}]++;
  }
  for (const auto& [pair, k] : mult)
    if (k >= 3)
      throw MapError("edge of multiplicity " + std::to_string(k) +
                     " in reduced core (invalid input map)");
}

std::pair<CombinatorialMap, FakeVertexPlan> subdivide(const Doodle& core) {
  CombinatorialMap m = core.map;
  assert_no_triple_edges(m);
  FakeVertexPlan plan;

  auto vs = m.vertices();
  std::vector<int> vidx(m.capacity(), -1);
  for (size_t i = 0; i < vs.size(); ++i)
    for (DartId x : vs[i]) vidx[x] = static_cast<int>(i);

  std::vector<std::vector<DartId>> loops;
  std::map<std::pair<int, int>, std::vector<DartId>> parallel;
  for (const auto& e : m.edge_list()) {
    int u = vidx[e[0]], v = vidx[e[1]];
    if (u == v)
      loops.push_back(e);
    else
      parallel[{std::min(u, v), std::max(u, v)}].push_back(std::min(e[0], e[1]));
  }

  for (DartId x : m.darts()) plan.chainOfDart[x] = {x};

  auto splitOnce = [&](DartId a) {
    DartId b = m.alpha(a);
    DartId m1 = m.add_dart(), m2 = m.add_dart();
    m.make_vertex({m1, m2});
    m.link_edge(a, m1);
    m.link_edge(m2, b);
    plan.fakeVertexCount++;
    return std::pair<DartId, DartId>{m1, m2};
  };

  for (const auto& e : loops) {
    DartId a = std::min(e[0], e[1]), b = m.alpha(a);
    plan.loopEdges.push_back(a);
    auto [m1, m2] = splitOnce(a);
    auto [m3, m4] = splitOnce(m2);
    plan.chainOfDart[a] = {a, m2, m4};
    plan.chainOfDart[b] = {b, m3, m1};
  }
  for (const auto& [pair, edges] : parallel) {
    if (edges.size() < 2) continue;
    if (edges.size() > 2) throw MapError("triple edge in subdivide");
    DartId a = std::min(edges[0], edges[1]);
    DartId b = m.alpha(a);
    auto [m1, m2] = splitOnce(a);
    plan.chainOfDart[a] = {a, m2};
    plan.chainOfDart[b] = {b, m1};
  }

  // Result must be simple.
  auto vs2 = m.vertices();
  std::vector<int> vidx2(m.capacity(), -1);
  for (size_t i = 0; i < vs2.size(); ++i)
    for (DartId x : vs2[i]) vidx2[x] = static_cast<int>(i);
  std::set<std::pair<int, int>> seen;
  for (const auto& e : m.edge_list()) {
    int u = vidx2[e[0]], v = vidx2[e[1]];
    if (u == v) throw MapError("subdivide left a loop");
    auto key = std::make_pair(std::min(u, v), std::max(u, v));
    if (seen.count(key)) throw MapError("subdivide left parallel edges");
    seen.insert(key);
  }

  return {m, plan};
}

// ---- Corpus moves ----

Doodle add_loop(const Doodle& din, DartId host, bool leftOfHost) {
  Doodle d = din;
  DartId pPrime = leftOfHost ? host : d.map.alpha(host);
  DartId qPrime = d.map.alpha(pPrime);
  DartId l = d.map.add_dart(), al = d.map.add_dart();
  DartId p = d.map.add_dart(), q = d.map.add_dart();
  d.map.make_vertex({l, al, p, q});
  d.map.link_edge(l, al);
  d.map.link_edge(p, pPrime);
  d.map.link_edge(q, qPrime);
  return d;
}

Doodle add_loop_on_free_loop(const Doodle& din, int flIndex, bool intoDisk) {
  if (flIndex < 0 || flIndex >= static_cast<int>(din.freeLoops.size()))
    throw MapError("add_loop_on_free_loop: no such free loop");
  Containment where = din.freeLoops[flIndex].in;

  Doodle out;
  out.map = din.map;
  out.freeLoops = din.freeLoops;

  auto compOld = din.map.component_of_darts();
  std::vector<CompEntry> entries;
  {
    int ncomp = din.map.component_count();
    std::vector<DartId> keyOf(ncomp, kNoDart);
    for (DartId x : din.map.darts())
      if (keyOf[compOld[x]] == kNoDart) keyOf[compOld[x]] = x;
    for (int c = 0; c < ncomp; ++c)
      entries.push_back({keyOf[c], din.outerFaceRep[c], din.nesting[c]});
  }

  DartId l = out.map.add_dart(), al = out.map.add_dart();
  DartId p = out.map.add_dart(), q = out.map.add_dart();
  out.map.make_vertex({l, al, p, q});
  out.map.link_edge(l, al);
  out.map.link_edge(p, q);
  // Faces of the new component: petal {l}, {p}, and {al, q}.
  entries.push_back({l, intoDisk ? p : al, where});

  out.freeLoops.erase(out.freeLoops.begin() + flIndex);
  auto fix = [&](Containment& c) {
    if (c.kind != Containment::Kind::FreeLoop) return;
    if (c.freeLoop == flIndex) {
      // Children of the vanished circle sit on its bounded side.
      c = Containment::in_face(intoDisk ? al : p);
    } else if (c.freeLoop > flIndex) {
      c.freeLoop--;
    }
  };
  for (auto& e : entries) fix(e.in);
  for (auto& fl : out.freeLoops) fix(fl.in);

  auto compNew = out.map.component_of_darts();
  int ncomp2 = out.map.component_count();
  out.outerFaceRep.assign(ncomp2, kNoDart);
  out.nesting.assign(ncomp2, Containment::root());
  for (const auto& e : entries) {
    int c = compNew[e.keyDart];
    out.outerFaceRep[c] = e.outerRep;
    out.nesting[c] = e.in;
  }
  return out;
}

Doodle split_vertex(const Doodle& din, DartId anchor) {
  Doodle d = din;
  DartId a1 = anchor;
  DartId a2 = d.map.sigma(a1);
  DartId b1 = d.map.sigma(a2);
  DartId b2 = d.map.sigma(b1);
  if (d.map.sigma(b2) != a1) throw MapError("split_vertex: vertex is not 4-valent");
  DartId d1 = d.map.add_dart(), ad1 = d.map.add_dart();
  DartId d2 = d.map.add_dart(), ad2 = d.map.add_dart();
  d.map.make_vertex({d1, ad2, a1, a2});
  d.map.make_vertex({d2, ad1, b1, b2});
  d.map.link_edge(d1, ad1);
  d.map.link_edge(d2, ad2);
  return d;
}

}  // namespace doodle
