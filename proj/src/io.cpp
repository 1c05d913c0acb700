#include "doodle/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace doodle {

namespace {

struct ContainmentRef {
  bool root = false;
  std::string container;  // component index or free-loop name
  int faceIndex = -1;
  int line = 0;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
  throw MapError(origin + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

Doodle parse_doodle(std::istream& in, const std::string& origin) {
  Doodle d;
  std::map<std::string, DartId> dartId;
  std::map<std::string, int> dartVertexLine, dartEdgeLine;
  std::vector<std::pair<int, int>> outerDecls;  // (face index, line)
  std::vector<std::pair<std::string, ContainmentRef>> freeloopDecls;
  std::vector<std::pair<std::string, ContainmentRef>> nestDecls;

  auto dart = [&](const std::string& tok) {
    auto it = dartId.find(tok);
    if (it != dartId.end()) return it->second;
    DartId nd = d.map.add_dart();
    dartId[tok] = nd;
    return nd;
  };

  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw)) continue;

    auto need = [&](std::vector<std::string>& out, size_t count) {
      std::string tok;
      while (ls >> tok) out.push_back(tok);
      if (out.size() != count)
        fail(origin, lineno,
             "'" + kw + "' expects " + std::to_string(count) + " arguments, got " +
                 std::to_string(out.size()));
    };
    auto parseContainment = [&](const std::vector<std::string>& toks,
                                size_t at) -> ContainmentRef {
      ContainmentRef ref;
      ref.line = lineno;
      if (toks[at] == "root") {
        if (at + 1 != toks.size()) fail(origin, lineno, "trailing tokens after 'root'");
        ref.root = true;
        return ref;
      }
      if (toks[at] != "in" || at + 2 != toks.size())
        fail(origin, lineno, "expected 'in <container>:<face-index>' or 'root'");
      const std::string& spec = toks[at + 1];
      auto colon = spec.rfind(':');
      if (colon == std::string::npos) fail(origin, lineno, "expected <container>:<face-index>");
      ref.container = spec.substr(0, colon);
      try {
        ref.faceIndex = std::stoi(spec.substr(colon + 1));
      } catch (...) {
        fail(origin, lineno, "bad face index '" + spec.substr(colon + 1) + "'");
      }
      return ref;
    };

    if (kw == "vertex") {
      std::vector<std::string> t;
      need(t, 5);
      std::vector<DartId> rot;
      for (size_t i = 1; i <= 4; ++i) {
        if (dartVertexLine.count(t[i]))
          fail(origin, lineno, "dart '" + t[i] + "' already at a vertex (line " +
                                   std::to_string(dartVertexLine[t[i]]) + ")");
        dartVertexLine[t[i]] = lineno;
        rot.push_back(dart(t[i]));
      }
      d.map.make_vertex(rot);
    } else if (kw == "edge") {
      std::vector<std::string> t;
      need(t, 3);
      for (size_t i = 1; i <= 2; ++i) {
        if (dartEdgeLine.count(t[i]))
          fail(origin, lineno, "dart '" + t[i] + "' already on an edge (line " +
                                   std::to_string(dartEdgeLine[t[i]]) + ")");
        dartEdgeLine[t[i]] = lineno;
      }
      if (t[1] == t[2]) fail(origin, lineno, "edge pairs a dart with itself");
      d.map.link_edge(dart(t[1]), dart(t[2]));
    } else if (kw == "outer") {
      std::vector<std::string> t;
      need(t, 1);
      try {
        outerDecls.push_back({std::stoi(t[0]), lineno});
      } catch (...) {
        fail(origin, lineno, "bad face index '" + t[0] + "'");
      }
    } else if (kw == "freeloop") {
      std::vector<std::string> toks;
      std::string tok;
      while (ls >> tok) toks.push_back(tok);
      if (toks.size() < 2) fail(origin, lineno, "freeloop needs a name and a containment");
      freeloopDecls.push_back({toks[0], parseContainment(toks, 1)});
    } else if (kw == "nest") {
      std::vector<std::string> toks;
      std::string tok;
      while (ls >> tok) toks.push_back(tok);
      if (toks.size() != 3 || toks[1] != "in")
        fail(origin, lineno, "expected 'nest <component> in <container>:<face-index>'");
      nestDecls.push_back({toks[0], parseContainment(toks, 1)});
    } else {
      fail(origin, lineno, "unknown statement '" + kw + "'");
    }
  }

  for (const auto& [tok, id] : dartId) {
    if (!dartVertexLine.count(tok)) fail(origin, 0, "dart '" + tok + "' has no vertex");
    if (!dartEdgeLine.count(tok)) fail(origin, 0, "dart '" + tok + "' has no edge");
  }

  try {
    d.map.check_structure();
  } catch (const MapError& e) {
    fail(origin, 0, e.what());
  }

  auto faces = d.map.faces();
  auto comp = d.map.component_of_darts();
  int ncomp = d.map.component_count();
  d.outerFaceRep.assign(ncomp, kNoDart);
  d.nesting.assign(ncomp, Containment::root());

  for (auto [fi, ln] : outerDecls) {
    if (fi < 0 || fi >= static_cast<int>(faces.size()))
      fail(origin, ln, "face index " + std::to_string(fi) + " out of range (have " +
                           std::to_string(faces.size()) + " faces)");
    DartId rep = faces[fi][0];
    int c = comp[rep];
    if (d.outerFaceRep[c] != kNoDart)
      fail(origin, ln, "component " + std::to_string(c) + " already has an outer face");
    d.outerFaceRep[c] = rep;
  }
  for (int c = 0; c < ncomp; ++c)
    if (d.outerFaceRep[c] == kNoDart)
      fail(origin, 0, "component " + std::to_string(c) + " has no outer face declaration");

  // Free loops first (so containment can reference them by name).
  std::map<std::string, int> flName;  // name -> index
  for (const auto& [name, ref] : freeloopDecls) {
    if (flName.count(name)) fail(origin, ref.line, "duplicate freeloop '" + name + "'");
    flName[name] = static_cast<int>(d.freeLoops.size());
    d.freeLoops.push_back({name, Containment::root()});
  }
  auto resolve = [&](const ContainmentRef& ref) -> Containment {
    if (ref.root) return Containment::root();
    if (flName.count(ref.container)) {
      if (ref.faceIndex != 0)
        fail(origin, ref.line, "a free loop has only region 0");
      return Containment::in_free_loop(flName[ref.container]);
    }
    int c = -1;
    try {
      c = std::stoi(ref.container);
    } catch (...) {
      fail(origin, ref.line, "unknown container '" + ref.container + "'");
    }
    if (c < 0 || c >= ncomp) fail(origin, ref.line, "no component " + std::to_string(c));
    if (ref.faceIndex < 0 || ref.faceIndex >= static_cast<int>(faces.size()))
      fail(origin, ref.line, "face index out of range");
    DartId rep = faces[ref.faceIndex][0];
    if (comp[rep] != c)
      fail(origin, ref.line, "face " + std::to_string(ref.faceIndex) + " is not in component " +
                                 std::to_string(c));
    return Containment::in_face(rep);
  };
  for (size_t i = 0; i < freeloopDecls.size(); ++i)
    d.freeLoops[i].in = resolve(freeloopDecls[i].second);
  for (const auto& [compTok, ref] : nestDecls) {
    int c = -1;
    try {
      c = std::stoi(compTok);
    } catch (...) {
      fail(origin, ref.line, "bad component '" + compTok + "'");
    }
    if (c < 0 || c >= ncomp) fail(origin, ref.line, "no component " + std::to_string(c));
    d.nesting[c] = resolve(ref);
  }

  return d;
}

Doodle parse_doodle_string(const std::string& text, const std::string& origin) {
  std::istringstream ss(text);
  return parse_doodle(ss, origin);
}

Doodle load_doodle_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw MapError("cannot open '" + path + "'");
  return parse_doodle(f, path);
}

std::string serialize_doodle(const Doodle& d) {
  std::ostringstream os;
  auto vs = d.map.vertices();
  for (size_t i = 0; i < vs.size(); ++i) {
    os << "vertex v" << i;
    for (DartId x : vs[i]) os << " d" << x;
    os << "\n";
  }
  auto es = d.map.edge_list();
  for (size_t i = 0; i < es.size(); ++i)
    os << "edge e" << i << " d" << es[i][0] << " d" << es[i][1] << "\n";
  auto faces = d.map.faces();
  auto faceIndex = [&](DartId rep) {
    for (size_t i = 0; i < faces.size(); ++i)
      for (DartId x : faces[i])
        if (x == rep) return static_cast<int>(i);
    throw MapError("serialize: face representative not found");
  };
  for (DartId rep : d.outerFaceRep) os << "outer " << faceIndex(rep) << "\n";
  auto comp = d.map.component_of_darts();
  auto emitContainment = [&](const Containment& c) -> std::string {
    switch (c.kind) {
      case Containment::Kind::Root:
        return "root";
      case Containment::Kind::Face:
        return "in " + std::to_string(comp[c.faceDart]) + ":" +
               std::to_string(faceIndex(c.faceDart));
      case Containment::Kind::FreeLoop:
        return "in " + d.freeLoops[c.freeLoop].name + ":0";
    }
    return "root";
  };
  for (size_t c = 0; c < d.nesting.size(); ++c)
    if (d.nesting[c].kind != Containment::Kind::Root)
      os << "nest " << c << " " << emitContainment(d.nesting[c]) << "\n";
  for (const auto& fl : d.freeLoops)
    os << "freeloop " << fl.name << " " << emitContainment(fl.in) << "\n";
  return os.str();
}

}  // namespace doodle
