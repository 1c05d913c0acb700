#include "doodle/fary.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace doodle {

namespace {

// Corner t of a face walk sits between walk[t] (arriving) and walk[t+1]
// (departing); its vertex is the tail of walk[t+1] and its sector is swept
// counterclockwise from walk[t+1] to sigma(walk[t+1]) = alpha(walk[t]).
DartId corner_out(const std::vector<DartId>& walk, size_t t) {
  return walk[(t + 1) % walk.size()];
}

// Inserts a fresh dart into the corner sector of `out`, i.e. right after
// `out` in its vertex rotation.
DartId insert_dart_at_corner(CombinatorialMap& m, DartId out) {
  DartId in = m.sigma(out);
  DartId x = m.add_dart();
  m.set_sigma(out, x);
  m.set_sigma(x, in);
  return x;
}

std::vector<int> vertex_ids(const CombinatorialMap& m) {
  std::vector<int> vid(m.capacity(), -1);
  auto vs = m.vertices();
  for (size_t i = 0; i < vs.size(); ++i)
    for (DartId x : vs[i]) vid[x] = static_cast<int>(i);
  return vid;
}

}  // namespace

StraightDrawing embed(const CombinatorialMap& g, DartId outerFaceRep) {
  if (g.component_count() != 1) throw MapError("embed: graph must be connected");
  {
    auto vid = vertex_ids(g);
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edge_list()) {
      int u = vid[e[0]], v = vid[e[1]];
      if (u == v) throw MapError("embed: graph has a loop");
      if (!seen.insert({std::min(u, v), std::max(u, v)}).second)
        throw MapError("embed: graph has parallel edges");
    }
    if (g.vertex_count() - g.edge_count() + g.face_count() != 2)
      throw MapError("embed: map is not planar (genus 0 check failed)");
    if (g.vertex_count() < 3) throw MapError("embed: need at least three vertices");
    // A bridge traverses one face twice.
    for (const auto& f : g.faces()) {
      std::set<DartId> inFace(f.begin(), f.end());
      for (DartId x : f)
        if (inFace.count(g.alpha(x)))
          throw MapError("embed: graph has a bridge (unsupported)");
    }
  }

  CombinatorialMap m = g;
  std::set<DartId> scaffold;
  auto addChordWithVertex = [&](DartId outA, DartId outB) {
    DartId xA = insert_dart_at_corner(m, outA);
    DartId xB = insert_dart_at_corner(m, outB);
    DartId s1 = m.add_dart(), s2 = m.add_dart();
    m.make_vertex({s1, s2});
    m.link_edge(xA, s1);
    m.link_edge(xB, s2);
    for (DartId x : {xA, xB, s1, s2}) scaffold.insert(x);
  };
  auto addChord = [&](DartId outA, DartId outB) {
    DartId xA = insert_dart_at_corner(m, outA);
    DartId xB = insert_dart_at_corner(m, outB);
    m.link_edge(xA, xB);
    scaffold.insert(xA);
    scaffold.insert(xB);
  };

  // 1. Cut repeated face-walk visits off with scaffolded chords until every
  //    face boundary is a simple cycle.
  bool progress = true;
  while (progress) {
    progress = false;
    auto vid = vertex_ids(m);
    for (const auto& f : m.faces()) {
      size_t L = f.size();
      if (L < 4) continue;
      std::map<int, size_t> firstSeen;
      for (size_t t = 0; t < L; ++t) {
        int v = vid[corner_out(f, t)];
        if (firstSeen.emplace(v, t).second) continue;
        DartId outPrev = corner_out(f, (t + L - 1) % L);
        DartId outNext = corner_out(f, (t + 1) % L);
        if (vid[outPrev] == vid[outNext])
          throw MapError("embed: cannot separate repeated face visit");
        addChordWithVertex(outPrev, outNext);
        progress = true;
        break;
      }
      if (progress) break;
    }
  }

  // 2. Ear-triangulate every face except the one that must stay unbounded.
  DartId outerNow = outerFaceRep;
  progress = true;
  while (progress) {
    progress = false;
    auto vid = vertex_ids(m);
    std::set<std::pair<int, int>> edges;
    for (const auto& e : m.edge_list())
      edges.insert({std::min(vid[e[0]], vid[e[1]]), std::max(vid[e[0]], vid[e[1]])});
    std::set<DartId> outerDarts;
    for (DartId x : m.face_of(outerNow)) outerDarts.insert(x);

    for (const auto& f : m.faces()) {
      if (f.size() <= 3 || outerDarts.count(f[0])) continue;
      size_t L = f.size();
      bool added = false;
      for (size_t t = 0; t < L && !added; ++t) {
        DartId a = corner_out(f, (t + L - 1) % L);
        DartId b = corner_out(f, (t + 1) % L);
        int va = vid[a], vb = vid[b];
        if (va == vb) continue;
        if (edges.count({std::min(va, vb), std::max(va, vb)})) continue;
        addChord(a, b);
        added = true;
      }
      if (!added)
        throw MapError("embed: no ear chord available (planarity argument violated)");
      progress = true;
      break;
    }
  }

  // 3. Star the outer face with a scaffold apex; the face between the apex
  //    and the first two corners becomes the pinned outer triangle.
  std::vector<DartId> apexDarts;
  {
    auto f = m.face_of(outerNow);
    size_t L = f.size();
    std::vector<DartId> cornerDarts;
    for (size_t t = 0; t < L; ++t) {
      DartId c = insert_dart_at_corner(m, corner_out(f, t));
      cornerDarts.push_back(c);
      scaffold.insert(c);
    }
    for (size_t t = 0; t < L; ++t) {
      DartId x = m.add_dart();
      apexDarts.push_back(x);
      scaffold.insert(x);
    }
    m.make_vertex(apexDarts);
    for (size_t t = 0; t < L; ++t) m.link_edge(apexDarts[t], cornerDarts[t]);
  }
  DartId pinnedFaceRep = apexDarts[0];

  for (const auto& f : m.faces())
    if (f.size() != 3) throw MapError("embed: triangulation left a non-triangle face");

  // 4. Tutte system over the rationals: the triangulation is simple maximal
  //    planar, hence 3-connected, so the barycentric drawing with a convex
  //    pinned outer triangle is a plane embedding realizing the map.
  auto vid = vertex_ids(m);
  int nv = m.vertex_count();
  auto pinWalk = m.face_of(pinnedFaceRep);
  // The outer face walk runs clockwise in the drawing (unbounded on its left).
  std::map<int, Vec2q> pinned;
  pinned[vid[pinWalk[0]]] = Vec2q(Rational(0), Rational(2));
  pinned[vid[pinWalk[1]]] = Vec2q(Rational(2), Rational(-1));
  pinned[vid[pinWalk[2]]] = Vec2q(Rational(-2), Rational(-1));

  std::vector<std::vector<Rational>> A(nv, std::vector<Rational>(nv, Rational(0)));
  std::vector<std::array<Rational, 2>> rhs(nv, {Rational(0), Rational(0)});
  std::vector<std::vector<int>> nbr(nv);
  for (const auto& e : m.edge_list()) {
    nbr[vid[e[0]]].push_back(vid[e[1]]);
    nbr[vid[e[1]]].push_back(vid[e[0]]);
  }
  for (int v = 0; v < nv; ++v) {
    if (pinned.count(v)) {
      A[v][v] = 1;
      rhs[v][0] = pinned[v].x();
      rhs[v][1] = pinned[v].y();
    } else {
      A[v][v] = Rational(static_cast<int>(nbr[v].size()));
      for (int u : nbr[v]) A[v][u] -= 1;
    }
  }
  for (int col = 0; col < nv; ++col) {
    int piv = -1;
    for (int r = col; r < nv; ++r)
      if (A[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw MapError("embed: singular Tutte system");
    std::swap(A[col], A[piv]);
    std::swap(rhs[col], rhs[piv]);
    for (int r = col + 1; r < nv; ++r) {
      if (A[r][col] == 0) continue;
      Rational factor = A[r][col] / A[col][col];
      for (int c2 = col; c2 < nv; ++c2) A[r][c2] -= factor * A[col][c2];
      rhs[r][0] -= factor * rhs[col][0];
      rhs[r][1] -= factor * rhs[col][1];
    }
  }
  std::vector<Vec2q> posByVid(nv, Vec2q(Rational(0), Rational(0)));
  for (int r = nv - 1; r >= 0; --r) {
    Rational x = rhs[r][0], y = rhs[r][1];
    for (int c2 = r + 1; c2 < nv; ++c2) {
      x -= A[r][c2] * posByVid[c2].x();
      y -= A[r][c2] * posByVid[c2].y();
    }
    posByVid[r] = Vec2q(x / A[r][r], y / A[r][r]);
  }

  // 5. Remove the scaffolding; original darts keep their rotations.
  for (DartId x = 0; x < m.capacity(); ++x)
    if (m.alive(x) && scaffold.count(x)) m.remove_edge(x);

  for (DartId x : g.darts())
    if (!m.alive(x) || m.sigma(x) != g.sigma(x) || m.alpha(x) != g.alpha(x))
      throw MapError("embed: scaffold removal did not restore the input map");

  StraightDrawing out;
  out.graph = g;
  out.outerFaceRep = outerFaceRep;
  out.pos.assign(g.capacity(), Vec2q(Rational(0), Rational(0)));
  for (DartId x : g.darts()) out.pos[x] = posByVid[vid[x]];

  // 6. Clearance per vertex: nearest non-incident segment or adjacent vertex.
  out.clearance.assign(g.capacity(), 0.0);
  auto gvid = vertex_ids(g);
  auto edges = g.edge_list();
  for (const auto& vOrbit : g.vertices()) {
    Vec2q p = out.pos[vOrbit[0]];
    Rational best2(-1);
    for (const auto& e : edges) {
      bool incident =
          gvid[e[0]] == gvid[vOrbit[0]] || gvid[e[1]] == gvid[vOrbit[0]];
      if (incident) continue;
      Rational d2 = segment_dist2<Rational>(out.pos[e[0]], out.pos[e[1]], p);
      if (best2 < 0 || d2 < best2) best2 = d2;
    }
    for (DartId x : vOrbit) {
      Rational d2 = (out.pos[g.alpha(x)] - p).squaredNorm();
      if (best2 < 0 || d2 < best2) best2 = d2;
    }
    double c = best2 < 0 ? 1.0 : std::sqrt(static_cast<double>(best2));
    for (DartId x : vOrbit) out.clearance[x] = c;
  }

  auto rep = verify_straight_drawing(out);
  if (!rep.ok) {
    std::string msg = "embed: self-verification failed:";
    for (const auto& v : rep.violations) msg += " [" + v.rule + ": " + v.where + "]";
    throw MapError(msg);
  }
  return out;
}

namespace {

// Counterclockwise angular order on exact direction vectors, starting just
// above the positive x axis.
bool ccw_less(const Vec2q& a, const Vec2q& b) {
  auto half = [](const Vec2q& v) {
    return (v.y() > 0 || (v.y() == 0 && v.x() > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross2<Rational>(a, b) > 0;
}

}  // namespace

ValidationReport verify_straight_drawing(const StraightDrawing& s) {
  ValidationReport rep;
  const CombinatorialMap& g = s.graph;
  auto vid = vertex_ids(g);
  auto edges = g.edge_list();
  auto vs = g.vertices();

  for (size_t i = 0; i < vs.size(); ++i)
    for (size_t j = i + 1; j < vs.size(); ++j)
      if (s.pos[vs[i][0]] == s.pos[vs[j][0]])
        rep.fail("coincident-vertices", "vertices at darts " + std::to_string(vs[i][0]) +
                                            "," + std::to_string(vs[j][0]));

  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i + 1; j < edges.size(); ++j) {
      Vec2q a = s.pos[edges[i][0]], b = s.pos[edges[i][1]];
      Vec2q c = s.pos[edges[j][0]], d = s.pos[edges[j][1]];
      int vi0 = vid[edges[i][0]], vi1 = vid[edges[i][1]];
      int vj0 = vid[edges[j][0]], vj1 = vid[edges[j][1]];
      int shared = ((vi0 == vj0 || vi0 == vj1) ? 1 : 0) + ((vi1 == vj0 || vi1 == vj1) ? 1 : 0);
      if (shared == 0) {
        if (segments_intersect<Rational>(a, b, c, d))
          rep.fail("segment-crossing", "edges at darts " + std::to_string(edges[i][0]) +
                                           "," + std::to_string(edges[j][0]));
      } else {
        Vec2q sharedPt = (vi0 == vj0 || vi0 == vj1) ? a : b;
        Vec2q farI = (sharedPt == a) ? b : a;
        Vec2q farJ = (sharedPt == c) ? d : c;
        auto onSeg = [](const Vec2q& p, const Vec2q& q, const Vec2q& r) {
          if (orient<Rational>(p, q, r) != 0) return false;
          return std::min(p.x(), q.x()) <= r.x() && r.x() <= std::max(p.x(), q.x()) &&
                 std::min(p.y(), q.y()) <= r.y() && r.y() <= std::max(p.y(), q.y());
        };
        if (onSeg(c, d, farI) || onSeg(a, b, farJ))
          rep.fail("segment-overlap", "edges at darts " + std::to_string(edges[i][0]) + "," +
                                          std::to_string(edges[j][0]));
      }
    }
  }

  for (const auto& v : vs) {
    if (v.size() < 3) continue;
    std::vector<DartId> sorted = v;
    std::sort(sorted.begin(), sorted.end(), [&](DartId x, DartId y) {
      Vec2q dx = s.pos[g.alpha(x)] - s.pos[x];
      Vec2q dy = s.pos[g.alpha(y)] - s.pos[y];
      return ccw_less(dx, dy);
    });
    auto it = std::find(sorted.begin(), sorted.end(), v[0]);
    std::rotate(sorted.begin(), it, sorted.end());
    if (sorted != v) rep.fail("rotation-mismatch", "vertex at dart " + std::to_string(v[0]));
  }

  {
    DartId extreme = kNoDart;
    for (const auto& v : vs) {
      if (extreme == kNoDart) {
        extreme = v[0];
        continue;
      }
      const Vec2q &p = s.pos[v[0]], &q = s.pos[extreme];
      if (p.x() > q.x() || (p.x() == q.x() && p.y() > q.y())) extreme = v[0];
    }
    if (extreme != kNoDart) {
      Vec2q plusX(Rational(1), Rational(0));
      auto orbit = g.vertex_of(extreme);
      DartId corner = kNoDart;
      for (DartId y : orbit) {
        Vec2q dy = s.pos[g.alpha(y)] - s.pos[y];
        Vec2q dn = s.pos[g.alpha(g.sigma(y))] - s.pos[g.sigma(y)];
        bool inSector;
        if (orbit.size() == 1)
          inSector = true;
        else if (ccw_less(dy, dn))
          inSector = !ccw_less(plusX, dy) && ccw_less(plusX, dn);
        else
          inSector = !ccw_less(plusX, dy) || ccw_less(plusX, dn);
        if (inSector) {
          corner = y;
          break;
        }
      }
      std::set<DartId> outer;
      for (DartId x : g.face_of(s.outerFaceRep)) outer.insert(x);
      if (corner == kNoDart || !outer.count(corner))
        rep.fail("outer-face", "unbounded region does not match the designated face");
    }
  }

  return rep;
}

}  // namespace doodle
