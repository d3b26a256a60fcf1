#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tensortrack/colored_graph.hpp"

namespace tensortrack {

// Gaussian moment of an invariant bubble as a polynomial in the index range
// N: summing over Wick pairings, a pairing with F faces touching the pairing
// color contributes N^F.
struct MomentPolynomial {
    std::map<int, long long> coefficients; // exponent -> pairing count

    std::string to_string() const;
    long long evaluate(int ndim) const;
    long long pairing_count() const; // sum of coefficients, = pairs!
};

MomentPolynomial exact_moment(const ColoredGraph& bubble);

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
};

// Monte Carlo estimate of the same moment with complex Gaussian entries of
// unit variance. Sampling is organized in fixed blocks of 4096 with one
// substream per block, so the estimate depends on (samples, seed) only and
// never on the worker count.
MonteCarloEstimate mc_moment(const ColoredGraph& bubble, int ndim, std::uint64_t samples,
                             std::uint64_t seed);

// Per-pairing breakdown: how many faces each Wick pairing closes and which
// share of the exact moment it carries as N grows. The leading pairings are
// the ones whose closures have degree zero.
struct DominanceRow {
    Perm pairing;
    int faces_with_pairing_color = 0;
    int closure_degree = -1; // -1 when the closure is disconnected or rank < 3
    std::vector<double> shares; // aligned with the N grid
};

struct DominanceProfile {
    std::vector<int> grid;
    std::vector<DominanceRow> rows; // sorted by descending face count
};

DominanceProfile dominance_profile(const ColoredGraph& bubble, const std::vector<int>& grid);

} // namespace tensortrack
