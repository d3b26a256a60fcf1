#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tensortrack/colored_graph.hpp"
#include "tensortrack/model.hpp"

namespace tensortrack::testing {

// Exact rational arithmetic for contraction bookkeeping.
struct Fraction {
    long long num = 0;
    long long den = 1;

    Fraction() = default;
    Fraction(long long n) : num(n) {}
    Fraction(long long n, long long d);

    Fraction operator+(const Fraction& o) const;
    Fraction operator*(const Fraction& o) const;
    Fraction operator/(const Fraction& o) const;
    bool operator==(const Fraction& o) const = default;

    bool is_integer() const { return den == 1; }
    long long as_integer() const;
    std::string to_string() const;
};

// Connected classes with color 0 gauged to the identity, recounted by
// averaging fixed connected tuples of centralizer members over all
// relabelings instead of canonicalizing anything.
std::uint64_t burnside_census(int rank, int pairs);

// Melonic classes recounted by breadth-first dipole insertion starting from
// the elementary pair; counts[i] covers i + 1 pairs.
std::vector<std::uint64_t> melon_tree_counts(int rank, int max_pairs);

// One-loop renormalization coefficients recounted from labeled Wick
// contractions of the quartic action, normalized against the tree vertex.
// The 4-point side keeps connected one-particle-irreducible contractions;
// the 2-point side projects routed divergences onto their block dimensions.
struct WickCoefficients {
    Fraction a_hat;
    Fraction b_hat;
    int orbit_factor = 1; // 2 when every vertex splitting is crossing symmetric
    long long a = 0;      // orbit_factor * a_hat
    long long b = 0;      // orbit_factor * b_hat
};

WickCoefficients wick_coefficients(const ModelSpec& model);

// Plain quadruple loop over the momentum box; small boxes only.
double brute_divergent_sum(int box, double mass2);

// Gaussian moment by explicit enumeration of one index per bubble edge,
// summing a 0/1 permanent per assignment.
unsigned long long direct_moment(const ColoredGraph& bubble, int ndim);

} // namespace tensortrack::testing
