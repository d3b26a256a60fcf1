#include "tensortrack/moments.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "tensortrack/errors.hpp"
#include "tensortrack/melons.hpp"
#include "tensortrack/threads.hpp"

namespace tensortrack {

namespace {

constexpr std::uint64_t kBlockSize = 4096;

void check_bubble_size(const ColoredGraph& bubble) {
    if (bubble.pairs > 6)
        throw ResourceLimitError("moments limited to bubbles with <= 6 pairs, got " +
                                 std::to_string(bubble.pairs));
}

// Closure of the bubble under a Wick pairing: color 0 carries the pairing.
ColoredGraph pairing_closure(const ColoredGraph& bubble, const Perm& pairing) {
    std::vector<Perm> ms;
    ms.reserve(static_cast<std::size_t>(bubble.rank) + 1);
    ms.push_back(pairing);
    for (const Perm& m : bubble.matchings) ms.push_back(m);
    return make_graph(bubble.rank + 1, ms);
}

int faces_with_color0(const ColoredGraph& closure_graph) {
    int f = 0;
    for (int c = 1; c < closure_graph.rank; ++c)
        f += static_cast<int>(face_lengths(closure_graph, 0, c).size());
    return f;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

} // namespace

std::string MomentPolynomial::to_string() const {
    if (coefficients.empty()) return "0";
    std::string out;
    for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
        if (!out.empty()) out += " + ";
        const auto [exp, coeff] = *it;
        if (exp == 0) {
            out += std::to_string(coeff);
            continue;
        }
        if (coeff != 1) out += std::to_string(coeff) + "*";
        out += exp == 1 ? "N" : "N^" + std::to_string(exp);
    }
    return out;
}

long long MomentPolynomial::evaluate(int ndim) const {
    if (ndim < 1) throw InvalidArgumentError("moment evaluation needs N >= 1");
    constexpr __int128 limit = static_cast<__int128>(9223372036854775807LL);
    __int128 total = 0;
    for (const auto& [exp, coeff] : coefficients) {
        __int128 term = coeff;
        for (int i = 0; i < exp; ++i) {
            term *= ndim;
            if (term > limit)
                throw ResourceLimitError("moment value overflows 64-bit at N = " +
                                         std::to_string(ndim));
        }
        total += term;
        if (total > limit)
            throw ResourceLimitError("moment value overflows 64-bit at N = " + std::to_string(ndim));
    }
    return static_cast<long long>(total);
}

long long MomentPolynomial::pairing_count() const {
    long long n = 0;
    for (const auto& [exp, coeff] : coefficients) n += coeff;
    return n;
}

MomentPolynomial exact_moment(const ColoredGraph& bubble) {
    check_bubble_size(bubble);
    MomentPolynomial poly;
    for (const Perm& pairing : cached_permutations(bubble.pairs))
        ++poly.coefficients[faces_with_color0(pairing_closure(bubble, pairing))];
    return poly;
}

namespace {

// Per-sample evaluator for the invariant at one Gaussian draw. The tensor phi
// is stored flat with color-0-major strides.
struct Sampler {
    const ColoredGraph& bubble;
    int ndim;
    int rank;
    std::size_t entries;
    std::vector<int> strides;
    // n == 2 decomposition: colors whose matching is parallel (S) vs crossed.
    std::vector<int> parallel_colors, crossed_colors;
    std::size_t parallel_span = 1, crossed_span = 1;

    Sampler(const ColoredGraph& b, int nd) : bubble(b), ndim(nd), rank(b.rank) {
        entries = 1;
        strides.assign(static_cast<std::size_t>(rank), 0);
        for (int c = rank - 1; c >= 0; --c) {
            strides[static_cast<std::size_t>(c)] = static_cast<int>(entries);
            entries *= static_cast<std::size_t>(ndim);
            if (entries > (1u << 22))
                throw ResourceLimitError("mc_moment tensor storage exceeds 4M entries");
        }
        if (bubble.pairs == 2) {
            for (int c = 0; c < rank; ++c) {
                if (bubble.matchings[static_cast<std::size_t>(c)][0] == 0) {
                    parallel_colors.push_back(c);
                    parallel_span *= static_cast<std::size_t>(ndim);
                } else {
                    crossed_colors.push_back(c);
                    crossed_span *= static_cast<std::size_t>(ndim);
                }
            }
        }
    }

    std::size_t flat(const std::vector<int>& digits, const std::vector<int>& colors,
                     std::size_t base) const {
        std::size_t idx = base;
        for (std::size_t i = 0; i < colors.size(); ++i)
            idx += static_cast<std::size_t>(digits[i]) *
                   static_cast<std::size_t>(strides[static_cast<std::size_t>(colors[i])]);
        return idx;
    }

    double evaluate_pairs2(const std::vector<std::complex<double>>& phi,
                           std::vector<std::complex<double>>& m) const {
        // M(t, s) = sum_alpha phi(alpha, t) conj(phi(alpha, s)); the moment
        // sample is sum |M|^2.
        const std::size_t ct = crossed_span;
        std::fill(m.begin(), m.end(), std::complex<double>(0.0, 0.0));
        std::vector<int> alpha(parallel_colors.size(), 0);
        std::vector<int> tdig(crossed_colors.size(), 0);
        std::vector<int> sdig(crossed_colors.size(), 0);
        for (std::size_t a = 0; a < parallel_span; ++a) {
            // Decode alpha digits.
            std::size_t rest = a;
            for (std::size_t i = alpha.size(); i-- > 0;) {
                alpha[i] = static_cast<int>(rest % static_cast<std::size_t>(ndim));
                rest /= static_cast<std::size_t>(ndim);
            }
            const std::size_t base = flat(alpha, parallel_colors, 0);
            for (std::size_t t = 0; t < ct; ++t) {
                rest = t;
                for (std::size_t i = tdig.size(); i-- > 0;) {
                    tdig[i] = static_cast<int>(rest % static_cast<std::size_t>(ndim));
                    rest /= static_cast<std::size_t>(ndim);
                }
                const std::complex<double> ft = phi[flat(tdig, crossed_colors, base)];
                for (std::size_t s = 0; s < ct; ++s) {
                    rest = s;
                    for (std::size_t i = sdig.size(); i-- > 0;) {
                        sdig[i] = static_cast<int>(rest % static_cast<std::size_t>(ndim));
                        rest /= static_cast<std::size_t>(ndim);
                    }
                    m[t * ct + s] += ft * std::conj(phi[flat(sdig, crossed_colors, base)]);
                }
            }
        }
        double value = 0.0;
        for (const auto& z : m) value += std::norm(z);
        return value;
    }

    double evaluate_generic(const std::vector<std::complex<double>>& phi) const {
        // One free index per edge; whites read their slots from the edges at
        // their position, blacks through the matchings.
        const int n = bubble.pairs;
        const int edges = rank * n;
        double cost = std::pow(static_cast<double>(ndim), edges);
        if (cost > 2.0e6)
            throw ResourceLimitError("mc_moment generic path needs N^(rank*pairs) <= 2e6");
        std::vector<int> idx(static_cast<std::size_t>(edges), 0); // edge (c, w) -> index value
        double total = 0.0;
        for (;;) {
            std::complex<double> term(1.0, 0.0);
            for (int w = 0; w < n; ++w) {
                std::size_t p = 0;
                for (int c = 0; c < rank; ++c)
                    p += static_cast<std::size_t>(idx[static_cast<std::size_t>(c * n + w)]) *
                         static_cast<std::size_t>(strides[static_cast<std::size_t>(c)]);
                term *= phi[p];
            }
            for (int b = 0; b < n; ++b) {
                std::size_t p = 0;
                for (int c = 0; c < rank; ++c) {
                    // Edge of color c landing on black b starts at white
                    // m_c^{-1}(b).
                    int w = 0;
                    for (int cand = 0; cand < n; ++cand)
                        if (bubble.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(cand)] == b) {
                            w = cand;
                            break;
                        }
                    p += static_cast<std::size_t>(idx[static_cast<std::size_t>(c * n + w)]) *
                         static_cast<std::size_t>(strides[static_cast<std::size_t>(c)]);
                }
                term *= std::conj(phi[p]);
            }
            total += term.real();
            int e = edges - 1;
            for (; e >= 0; --e) {
                if (++idx[static_cast<std::size_t>(e)] < ndim) break;
                idx[static_cast<std::size_t>(e)] = 0;
            }
            if (e < 0) break;
        }
        return total;
    }
};

} // namespace

MonteCarloEstimate mc_moment(const ColoredGraph& bubble, int ndim, std::uint64_t samples,
                             std::uint64_t seed) {
    check_bubble_size(bubble);
    if (ndim < 1) throw InvalidArgumentError("mc_moment needs N >= 1");
    if (samples < 2) throw InvalidArgumentError("mc_moment needs at least 2 samples");

    const Sampler sampler(bubble, ndim);
    const std::uint64_t nblocks = chunk_count(samples, kBlockSize);
    std::vector<double> block_sum(static_cast<std::size_t>(nblocks), 0.0);
    std::vector<double> block_sumsq(static_cast<std::size_t>(nblocks), 0.0);

    parallel_chunks(samples, kBlockSize, [&](std::size_t bi, std::uint64_t lo, std::uint64_t hi) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x5851f42d4c957f2dULL * (bi + 1))));
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
        std::vector<std::complex<double>> phi(sampler.entries);
        std::vector<std::complex<double>> m(sampler.crossed_span * sampler.crossed_span);
        double s = 0.0, s2 = 0.0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            for (auto& z : phi) z = {gauss(rng), gauss(rng)};
            const double v = bubble.pairs == 2 ? sampler.evaluate_pairs2(phi, m)
                                               : sampler.evaluate_generic(phi);
            s += v;
            s2 += v * v;
        }
        block_sum[bi] = s;
        block_sumsq[bi] = s2;
    });

    double total = 0.0, total_sq = 0.0;
    for (std::size_t i = 0; i < block_sum.size(); ++i) {
        total += block_sum[i];
        total_sq += block_sumsq[i];
    }
    const double n = static_cast<double>(samples);
    MonteCarloEstimate est;
    est.mean = total / n;
    const double var = std::max(0.0, (total_sq - n * est.mean * est.mean) / (n - 1.0));
    est.std_error = std::sqrt(var / n);
    est.samples = samples;
    est.seed = seed;
    return est;
}

DominanceProfile dominance_profile(const ColoredGraph& bubble, const std::vector<int>& grid) {
    check_bubble_size(bubble);
    for (int n : grid)
        if (n < 1) throw InvalidArgumentError("dominance grid entries must be >= 1");

    DominanceProfile profile;
    profile.grid = grid;
    for (const Perm& pairing : cached_permutations(bubble.pairs)) {
        DominanceRow row;
        row.pairing = pairing;
        const ColoredGraph closed_graph = pairing_closure(bubble, pairing);
        row.faces_with_pairing_color = faces_with_color0(closed_graph);
        if (closed_graph.rank >= 3 && is_connected(closed_graph)) {
            long long omega = 0;
            bool ok = true;
            try {
                omega = degree(closed_graph).omega;
            } catch (const Error&) {
                ok = false;
            }
            row.closure_degree = ok ? static_cast<int>(omega) : -1;
        }
        profile.rows.push_back(std::move(row));
    }

    for (std::size_t gi = 0; gi < grid.size(); ++gi) {
        long double denom = 0.0;
        for (const auto& row : profile.rows)
            denom += std::pow(static_cast<long double>(grid[gi]),
                              static_cast<long double>(row.faces_with_pairing_color));
        for (auto& row : profile.rows)
            row.shares.push_back(static_cast<double>(
                std::pow(static_cast<long double>(grid[gi]),
                         static_cast<long double>(row.faces_with_pairing_color)) /
                denom));
    }

    std::sort(profile.rows.begin(), profile.rows.end(), [](const DominanceRow& x, const DominanceRow& y) {
        if (x.faces_with_pairing_color != y.faces_with_pairing_color)
            return x.faces_with_pairing_color > y.faces_with_pairing_color;
        return x.pairing < y.pairing;
    });
    return profile;
}

} // namespace tensortrack
