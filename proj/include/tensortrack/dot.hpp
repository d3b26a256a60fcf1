#pragma once

#include <string>

#include "tensortrack/colored_graph.hpp"

namespace tensortrack {

// Graphviz rendering of a colored graph. Deterministic: node and edge order
// and the color palette are fixed functions of the graph data, so equal graphs
// produce byte-identical output. Canonicalize first to make isomorphs agree.
std::string export_dot(const ColoredGraph& g);

} // namespace tensortrack
