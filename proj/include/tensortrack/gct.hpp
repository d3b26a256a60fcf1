#pragma once

#include <iosfwd>
#include <string>

#include "tensortrack/colored_graph.hpp"

namespace tensortrack {

// GCT is the line-oriented text format for colored graphs:
//
//   rank <k>
//   pairs <n>
//   edge <color> <white> <black>     (k*n lines, any order)
//
// Vertex labels are 1-based, colors 0-based. Lines whose first non-blank
// character is '#' and blank lines are ignored. Encoding is UTF-8 with LF.
ColoredGraph parse_gct(std::istream& in);
ColoredGraph parse_gct(const std::string& text);
ColoredGraph load_gct(const std::string& path);

// Canonical serialization: header, then edges ordered by (color, white).
// Equal graphs serialize byte-identically.
std::string serialize_gct(const ColoredGraph& g);
void save_gct(const ColoredGraph& g, const std::string& path);

} // namespace tensortrack
