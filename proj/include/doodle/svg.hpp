#pragma once

#include <string>
#include <vector>

#include "doodle/curve.hpp"

namespace doodle {

struct SvgAnnotations {
  std::vector<Vec2d> inflectionMarkers;
  std::vector<std::pair<Vec2d, std::string>> labels;
};

/// SVG 1.1 document with one path element per curve (lines, arcs and cubics
/// map to native path commands).  Byte-deterministic for fixed input.
std::string export_svg(const std::vector<PiecewiseCurve>& curves,
                       const SvgAnnotations& annotations = {});

}  // namespace doodle
