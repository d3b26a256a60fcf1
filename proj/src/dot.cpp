#include "tensortrack/dot.hpp"

#include <array>
#include <sstream>

namespace tensortrack {

namespace {

// Fixed palette, repeated cyclically for ranks above 12.
constexpr std::array<const char*, 12> kPalette = {
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#a65628",
    "#f781bf", "#17becf", "#666666", "#b2df8a", "#fdbf6f", "#cab2d6",
};

} // namespace

std::string export_dot(const ColoredGraph& g) {
    std::ostringstream out;
    out << "graph colored_graph {\n";
    out << "  layout=neato;\n";
    out << "  node [shape=circle, style=filled, fontsize=10];\n";
    for (int w = 1; w <= g.pairs; ++w)
        out << "  w" << w << " [fillcolor=white, fontcolor=black, label=\"" << w << "\"];\n";
    for (int b = 1; b <= g.pairs; ++b)
        out << "  b" << b << " [fillcolor=black, fontcolor=white, label=\"" << b << "\"];\n";
    for (int c = 0; c < g.rank; ++c) {
        const char* color = kPalette[static_cast<std::size_t>(c) % kPalette.size()];
        for (int w = 0; w < g.pairs; ++w) {
            const int b = g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
            out << "  w" << (w + 1) << " -- b" << (b + 1) << " [color=\"" << color
                << "\", label=\"" << c << "\", fontcolor=\"" << color << "\"];\n";
        }
    }
    out << "}\n";
    return out.str();
}

} // namespace tensortrack
