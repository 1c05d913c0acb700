#pragma once

#include <iosfwd>
#include <string>

#include "doodle/doodle.hpp"

namespace doodle {

/// Parses the doodle text format.  One statement per line, '#' comments:
///
///   vertex <v> <d0> <d1> <d2> <d3>     darts counterclockwise; strands pair
///                                      d0<->d2 and d1<->d3
///   edge <e> <dA> <dB>                 the two darts of one edge
///   outer <face-index>                 outward face of its component (one
///                                      line per component); indices refer to
///                                      the deterministic face enumeration
///   freeloop <name> in <c>:<face> | root
///   nest <component> in <c>:<face>
///
/// <c> is a component index or a free-loop name (free loops have the single
/// containing region 0).  Ids are ASCII tokens; dart ids are assigned densely
/// in order of first appearance.  Errors carry line numbers.
Doodle parse_doodle(std::istream& in, const std::string& origin = "<input>");
Doodle parse_doodle_string(const std::string& text, const std::string& origin = "<string>");
Doodle load_doodle_file(const std::string& path);

/// Deterministic serialization; parse(serialize(d)) is isomorphic to d.
std::string serialize_doodle(const Doodle& d);

}  // namespace doodle
