#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tensortrack/colored_graph.hpp"

namespace tensortrack {

constexpr std::uint64_t kDefaultCensusSpace = 100'000'000ULL;

// Census of connected rank-d invariants with a fixed number of pairs: the
// number of isomorphism classes, optionally with their canonical forms.
struct CensusLevel {
    int rank = 0;
    int pairs = 0;
    std::uint64_t count = 0;
    std::vector<CanonicalForm> forms; // sorted; filled only when requested
};

struct CensusResult {
    int rank = 0;
    std::vector<CensusLevel> levels; // levels[i] covers pairs = i + 1
};

// Enumerate all connected rank-`rank` graphs on `pairs` white/black pairs up
// to isomorphism. Gauge: color 0 is fixed to the identity matching, the other
// rank-1 matchings range over all permutations; duplicates are removed via
// canonical forms. Throws ResourceLimitError when (pairs!)^(rank-1) exceeds
// max_space.
CensusLevel enumerate_invariants(int rank, int pairs, bool keep_forms = false,
                                 std::uint64_t max_space = kDefaultCensusSpace);

// Same enumeration restricted to connected graphs satisfying `keep`. The
// predicate runs before deduplication and must be isomorphism-invariant.
CensusLevel enumerate_invariants_filtered(int rank, int pairs,
                                          const std::function<bool(const ColoredGraph&)>& keep,
                                          bool keep_forms = false,
                                          std::uint64_t max_space = kDefaultCensusSpace);

// Censuses for pairs = 1..max_pairs.
CensusResult count_invariants(int rank, int max_pairs,
                              std::uint64_t max_space = kDefaultCensusSpace);

} // namespace tensortrack
