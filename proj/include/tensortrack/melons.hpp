#pragma once

#include <string>
#include <vector>

#include "tensortrack/census.hpp"
#include "tensortrack/colored_graph.hpp"

namespace tensortrack {

// A jacket is a cyclic order of the colors up to rotation and reversal,
// stored as the representative starting at color 0 that is lexicographically
// no greater than its reversal. There are (rank-1)!/2 of them for rank >= 3.
using Jacket = std::vector<int>;

std::vector<Jacket> jackets(int rank);

// Genus of the ribbon graph a jacket induces: faces are the bicolored cycles
// of color pairs adjacent in the cyclic order, and 2 - 2g = F - E + V.
// Requires a connected graph of rank >= 3; a non-integer or negative result
// signals a bug.
int jacket_genus(const ColoredGraph& g, const Jacket& jacket);

struct DegreeReport {
    std::vector<std::pair<Jacket, int>> genera;
    long long omega = 0; // sum of the genera over all jackets
};

DegreeReport degree(const ColoredGraph& g);

// Whether the graph reduces to the elementary pair by repeatedly contracting
// dipoles of multiplicity rank-1 (a white and black vertex joined by all but
// one color). The outcome is order-independent; any contraction order works.
// Optionally records a human-readable reduction trace.
bool is_melonic(const ColoredGraph& g, std::vector<std::string>* trace = nullptr);

// Inverse move: split the edge of color `color` at white vertex `white`
// (0-based) by inserting a new white/black pair joined by every other color.
ColoredGraph insert_melon(const ColoredGraph& g, int color, int white);

// Census of melonic graphs with `pairs` white/black pairs.
CensusLevel melon_census(int rank, int pairs, bool keep_forms = false,
                         std::uint64_t max_space = kDefaultCensusSpace);

} // namespace tensortrack
