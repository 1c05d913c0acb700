#include "doodle/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace doodle {

namespace {

std::string num(double v) {
  char buf[40];
  if (std::abs(v) < 5e-7) v = 0.0;  // avoid "-0.000000"
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void emit_segment(std::ostringstream& os, const Segment& s) {
  switch (s.kind) {
    case Segment::Kind::Line:
      os << "L " << num(s.b.x()) << " " << num(s.b.y()) << " ";
      break;
    case Segment::Kind::Arc: {
      // Split sweeps over pi so the endpoint parametrization stays unambiguous.
      int parts = std::max(1, static_cast<int>(std::ceil(std::abs(s.sweep) / (0.9 * M_PI))));
      for (int i = 1; i <= parts; ++i) {
        double t = static_cast<double>(i) / parts;
        Vec2d p = s.point(t);
        // y axis is flipped by the top-level transform, so the sweep flag
        // matches the mathematical orientation directly.
        int sweepFlag = s.sweep > 0 ? 1 : 0;
        os << "A " << num(s.radius) << " " << num(s.radius) << " 0 0 " << sweepFlag << " "
           << num(p.x()) << " " << num(p.y()) << " ";
      }
      break;
    }
    case Segment::Kind::Cubic:
      os << "C " << num(s.c1.x()) << " " << num(s.c1.y()) << " " << num(s.c2.x()) << " "
         << num(s.c2.y()) << " " << num(s.b.x()) << " " << num(s.b.y()) << " ";
      break;
  }
}

}  // namespace

std::string export_svg(const std::vector<PiecewiseCurve>& curves,
                       const SvgAnnotations& annotations) {
  double lox = 0, loy = 0, hix = 1, hiy = 1;
  bool first = true;
  for (const auto& c : curves)
    for (const auto& s : c.segments)
      for (const Vec2d& p : flatten_segment(s, 1e-2)) {
        if (first) {
          lox = hix = p.x();
          loy = hiy = p.y();
          first = false;
        }
        lox = std::min(lox, p.x());
        hix = std::max(hix, p.x());
        loy = std::min(loy, p.y());
        hiy = std::max(hiy, p.y());
      }
  double w = std::max(1e-6, hix - lox), h = std::max(1e-6, hiy - loy);
  double margin = 0.05 * std::max(w, h);
  double strokeWidth = 0.004 * std::max(w, h);

  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << num(lox - margin) << " "
     << num(-hiy - margin) << " " << num(w + 2 * margin) << " " << num(h + 2 * margin)
     << "\">\n";
  os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke=\"black\" stroke-width=\""
     << num(strokeWidth) << "\">\n";
  for (const auto& c : curves) {
    if (c.segments.empty()) continue;
    std::ostringstream path;
    Vec2d p0 = c.segments.front().point(0);
    path << "M " << num(p0.x()) << " " << num(p0.y()) << " ";
    for (const auto& s : c.segments) emit_segment(path, s);
    path << "Z";
    os << "<path d=\"" << path.str() << "\"/>\n";
  }
  for (const Vec2d& m : annotations.inflectionMarkers)
    os << "<circle cx=\"" << num(m.x()) << "\" cy=\"" << num(m.y()) << "\" r=\""
       << num(2.5 * strokeWidth) << "\" fill=\"red\" stroke=\"none\"/>\n";
  os << "</g>\n";
  for (const auto& [pos, text] : annotations.labels)
    os << "<text x=\"" << num(pos.x()) << "\" y=\"" << num(-pos.y())
       << "\" font-size=\"" << num(10 * strokeWidth) << "\">" << text << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace doodle
