#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tensortrack/permutation.hpp"

namespace tensortrack {

// A closed edge-colored bipartite graph: n white and n black vertices, and for
// each color c in {0,...,rank-1} a perfect matching from whites to blacks.
// matchings[c][w] = b means an edge of color c from white w to black b, with
// 0-based internal indices. External text formats use 1-based vertex labels.
struct ColoredGraph {
    int rank = 0;
    int pairs = 0;
    std::vector<Perm> matchings;

    bool operator==(const ColoredGraph& o) const = default;
};

// An edge triple (color, white, black) with 1-based vertex labels, the unit of
// the external representation.
using EdgeTriple = std::array<int, 3>;

// Canonical representative of an isomorphism class: the lexicographically
// minimal ordered edge list over all white/black relabelings (colors fixed).
struct CanonicalForm {
    int rank = 0;
    int pairs = 0;
    std::vector<EdgeTriple> edges;

    bool operator==(const CanonicalForm& o) const = default;
    auto operator<=>(const CanonicalForm& o) const = default;

    // Compact byte key for hashing and set membership.
    std::string key() const;
};

// Face census of a closed graph: for every unordered color pair {a, b} the
// multiset of face lengths (each bicolored cycle of length 2*l contributes l
// whites, l blacks, and has face length 2*l).
struct FacePair {
    int color_a = 0;
    int color_b = 0;
    std::vector<int> lengths;

    bool operator==(const FacePair& o) const = default;
};

struct FaceSet {
    std::vector<FacePair> pairs;

    int total_faces() const;
    int total_length() const;
};

// Build a graph from raw edge triples, checking every invariant: labels in
// range, every (color, white) and (color, black) slot used exactly once.
// Throws MalformedGraphError or IncompletenessError with the offending slot.
ColoredGraph validate(int rank, int pairs, const std::vector<EdgeTriple>& edges);

// Convenience constructor from matchings; checks shape and bijectivity.
ColoredGraph make_graph(int rank, std::vector<Perm> matchings);

bool is_connected(const ColoredGraph& g);

// Apply white relabeling pi and black relabeling tau: edge (c, w, b) becomes
// (c, pi(w), tau(b)). Used by tests to generate isomorphs.
ColoredGraph relabel(const ColoredGraph& g, const Perm& white_map, const Perm& black_map);

CanonicalForm canonical_form(const ColoredGraph& g);

// Rebuild a graph from its canonical edge list.
ColoredGraph from_canonical(const CanonicalForm& cf);

FaceSet faces(const ColoredGraph& g);

// Cycle structure of m_b^{-1} ∘ m_a for one color pair; face lengths are twice
// the cycle lengths, sorted ascending.
std::vector<int> face_lengths(const ColoredGraph& g, int color_a, int color_b);

std::uint64_t fnv1a64(const std::string& bytes);

} // namespace tensortrack
