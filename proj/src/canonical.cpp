#include "doodle/canonical.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace doodle {

std::vector<int> bfs_labels(const CombinatorialMap& m, DartId start) {
  std::vector<int> label(m.capacity(), -1);
  std::vector<DartId> order;
  label[start] = 0;
  order.push_back(start);
  for (size_t i = 0; i < order.size(); ++i) {
    DartId d = order[i];
    for (DartId nb : {m.sigma(d), m.alpha(d)}) {
      if (label[nb] < 0) {
        label[nb] = static_cast<int>(order.size());
        order.push_back(nb);
      }
    }
  }
  return label;
}

namespace {

// Code of one component under a labeling: for labels 0..k-1 in order, the
// labels of sigma(d) and alpha(d).
std::vector<int> code_under(const CombinatorialMap& m, const std::vector<int>& label,
                            DartId start) {
  int k = 0;
  for (DartId d = 0; d < m.capacity(); ++d)
    if (m.alive(d) && label[d] >= 0) ++k;
  std::vector<DartId> byLabel(k, kNoDart);
  for (DartId d = 0; d < m.capacity(); ++d)
    if (m.alive(d) && label[d] >= 0) byLabel[label[d]] = d;
  std::vector<int> code;
  code.reserve(2 * k);
  for (DartId d : byLabel) {
    code.push_back(label[m.sigma(d)]);
    code.push_back(label[m.alpha(d)]);
  }
  return code;
}

// Canonical index of each face of one component under a labeling: faces
// ordered by their minimal label.  Returns map face-rep-min-label -> index and
// a lookup from any dart.
std::vector<int> face_cindex_by_dart(const CombinatorialMap& m, const std::vector<int>& label) {
  std::vector<int> cindex(m.capacity(), -1);
  // Gather (min label, darts) per face among labeled darts.
  std::vector<std::pair<int, std::vector<DartId>>> faceRecs;
  std::vector<char> seen(m.capacity(), 0);
  std::vector<DartId> byLabel;
  for (DartId d = 0; d < m.capacity(); ++d)
    if (m.alive(d) && label[d] >= 0) byLabel.push_back(d);
  std::sort(byLabel.begin(), byLabel.end(),
            [&](DartId a, DartId b) { return label[a] < label[b]; });
  for (DartId d : byLabel) {
    if (seen[d]) continue;
    std::vector<DartId> cyc;
    DartId x = d;
    do {
      cyc.push_back(x);
      seen[x] = 1;
      x = m.face_next(x);
    } while (x != d);
    faceRecs.push_back({label[d], std::move(cyc)});
  }
  // byLabel order already yields faces sorted by min label.
  for (size_t i = 0; i < faceRecs.size(); ++i)
    for (DartId x : faceRecs[i].second) cindex[x] = static_cast<int>(i);
  return cindex;
}

struct Node {
  bool isFreeLoop = false;
  int index = -1;            // component index or free-loop index
  int parent = -1;           // node index or -1 for root
  DartId parentFaceDart = kNoDart;  // when parent is a component
  std::vector<int> children;
  std::string str;
};

std::string component_string(const CombinatorialMap& m, const std::vector<DartId>& compDarts,
                             DartId outerRep, const std::vector<Node>& nodes,
                             const std::vector<int>& childIdx) {
  std::string best;
  for (DartId s : compDarts) {
    auto label = bfs_labels(m, s);
    auto code = code_under(m, label, s);
    auto cindex = face_cindex_by_dart(m, label);
    std::ostringstream os;
    os << "M[";
    for (size_t i = 0; i < code.size(); ++i) os << code[i] << (i + 1 < code.size() ? "," : "");
    os << "|out:" << cindex[outerRep] << "|";
    // Children grouped by canonical face index.
    std::map<int, std::vector<std::string>> groups;
    for (int ci : childIdx) groups[cindex[nodes[ci].parentFaceDart]].push_back(nodes[ci].str);
    for (auto& [fi, strs] : groups) {
      std::sort(strs.begin(), strs.end());
      os << "(f" << fi << ":";
      for (const auto& t : strs) os << t << ";";
      os << ")";
    }
    os << "]";
    std::string cand = os.str();
    if (best.empty() || cand < best) best = cand;
  }
  return best;
}

}  // namespace

std::string canonical_string_oriented(const Doodle& d) {
  const CombinatorialMap& m = d.map;
  auto compOf = m.component_of_darts();
  int ncomp = m.component_count();
  std::vector<std::vector<DartId>> compDarts(ncomp);
  for (DartId x : m.darts()) compDarts[compOf[x]].push_back(x);

  int nfl = static_cast<int>(d.freeLoops.size());
  std::vector<Node> nodes(ncomp + nfl);
  auto resolveParent = [&](const Containment& in, Node& node) {
    switch (in.kind) {
      case Containment::Kind::Root:
        node.parent = -1;
        break;
      case Containment::Kind::Face:
        node.parent = compOf[in.faceDart];
        node.parentFaceDart = in.faceDart;
        break;
      case Containment::Kind::FreeLoop:
        node.parent = ncomp + in.freeLoop;
        break;
    }
  };
  for (int c = 0; c < ncomp; ++c) {
    nodes[c].index = c;
    resolveParent(d.nesting[c], nodes[c]);
  }
  for (int i = 0; i < nfl; ++i) {
    nodes[ncomp + i].isFreeLoop = true;
    nodes[ncomp + i].index = i;
    resolveParent(d.freeLoops[i].in, nodes[ncomp + i]);
  }
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].parent >= 0) nodes[nodes[i].parent].children.push_back(static_cast<int>(i));

  // Bottom-up: process nodes whose children are all done.
  std::vector<char> done(nodes.size(), 0);
  bool progress = true;
  while (progress) {
    progress = false;
    for (size_t i = 0; i < nodes.size(); ++i) {
      if (done[i]) continue;
      bool ready = true;
      for (int c : nodes[i].children) ready = ready && done[c];
      if (!ready) continue;
      if (nodes[i].isFreeLoop) {
        std::vector<std::string> ch;
        for (int c : nodes[i].children) ch.push_back(nodes[c].str);
        std::sort(ch.begin(), ch.end());
        std::string s = "L{";
        for (auto& t : ch) s += t + ";";
        s += "}";
        nodes[i].str = s;
      } else {
        nodes[i].str = component_string(m, compDarts[nodes[i].index],
                                        d.outerFaceRep[nodes[i].index], nodes,
                                        nodes[i].children);
      }
      done[i] = 1;
      progress = true;
    }
  }
  for (char f : done)
    if (!f) throw MapError("containment forest has a cycle");

  std::vector<std::string> roots;
  for (const auto& nd : nodes)
    if (nd.parent < 0) roots.push_back(nd.str);
  std::sort(roots.begin(), roots.end());
  std::string out = "D{";
  for (auto& r : roots) out += r + ";";
  out += "}";
  return out;
}

std::string canonical_string(const Doodle& d) {
  return std::min(canonical_string_oriented(d), canonical_string_oriented(mirrored(d)));
}

bool map_isomorphic(const Doodle& a, const Doodle& b) {
  return canonical_string(a) == canonical_string(b);
}

std::optional<std::vector<DartId>> component_isomorphism(const CombinatorialMap& a,
                                                         DartId outerA,
                                                         const CombinatorialMap& b,
                                                         DartId outerB, bool allowMirror,
                                                         bool* usedMirror) {
  if (a.dart_count() != b.dart_count()) return std::nullopt;
  if (a.dart_count() == 0) {
    if (usedMirror) *usedMirror = false;
    return std::vector<DartId>{};
  }
  DartId sA = a.darts().front();
  auto labelA = bfs_labels(a, sA);
  auto codeA = code_under(a, labelA, sA);
  auto cidxA = face_cindex_by_dart(a, labelA);
  int outA = cidxA[outerA];

  auto tryMap = [&](const CombinatorialMap& bb, DartId outerRepB,
                    bool mirror) -> std::optional<std::vector<DartId>> {
    for (DartId sB : bb.darts()) {
      auto labelB = bfs_labels(bb, sB);
      auto codeB = code_under(bb, labelB, sB);
      if (codeB != codeA) continue;
      auto cidxB = face_cindex_by_dart(bb, labelB);
      if (cidxB[outerRepB] != outA) continue;
      std::vector<DartId> byLabelB(bb.dart_count(), kNoDart);
      for (DartId x : bb.darts()) byLabelB[labelB[x]] = x;
      std::vector<DartId> mapping(a.capacity(), kNoDart);
      for (DartId x : a.darts()) mapping[x] = byLabelB[labelA[x]];
      if (usedMirror) *usedMirror = mirror;
      return mapping;
    }
    return std::nullopt;
  };

  if (auto r = tryMap(b, outerB, false)) return r;
  if (allowMirror) {
    CombinatorialMap bm = b;
    for (DartId x : b.darts()) bm.set_sigma(b.sigma(x), x);
    if (auto r = tryMap(bm, b.alpha(outerB), true)) return r;
  }
  return std::nullopt;
}

}  // namespace doodle
