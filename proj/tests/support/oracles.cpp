#include "support/oracles.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "tensortrack/errors.hpp"
#include "tensortrack/melons.hpp"
#include "tensortrack/permutation.hpp"
#include "tensortrack/strands.hpp"

namespace tensortrack::testing {

Fraction::Fraction(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw InvalidArgumentError("fraction with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(std::llabs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Fraction Fraction::operator+(const Fraction& o) const {
    return Fraction(num * o.den + o.num * den, den * o.den);
}

Fraction Fraction::operator*(const Fraction& o) const {
    return Fraction(num * o.num, den * o.den);
}

Fraction Fraction::operator/(const Fraction& o) const {
    if (o.num == 0) throw InvalidArgumentError("division by zero fraction");
    return Fraction(num * o.den, den * o.num);
}

long long Fraction::as_integer() const {
    if (den != 1) throw InternalConsistencyError("expected integer, got " + to_string());
    return num;
}

std::string Fraction::to_string() const {
    return den == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(den);
}

namespace {

bool tuple_connected_bipartite(int pairs, const std::vector<Perm>& matchings) {
    const int total = 2 * pairs;
    std::vector<char> seen(static_cast<std::size_t>(total), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (const Perm& m : matchings) {
            int next;
            if (v < pairs)
                next = pairs + m[static_cast<std::size_t>(v)];
            else
                next = static_cast<int>(inverse(m)[static_cast<std::size_t>(v - pairs)]);
            if (!seen[static_cast<std::size_t>(next)]) {
                seen[static_cast<std::size_t>(next)] = 1;
                stack.push_back(next);
                ++reached;
            }
        }
    }
    return reached == total;
}

} // namespace

std::uint64_t burnside_census(int rank, int pairs) {
    if (rank < 1 || pairs < 1) throw InvalidArgumentError("census needs rank >= 1 and pairs >= 1");
    if (pairs > 6) throw ResourceLimitError("relabeling average kept to pairs <= 6");
    const std::vector<Perm>& perms = cached_permutations(pairs);
    const std::uint64_t nfact = factorial_u64(pairs);

    std::uint64_t fixed_total = 0;
    for (const Perm& tau : perms) {
        std::vector<Perm> centralizer;
        for (const Perm& m : perms)
            if (compose(tau, m) == compose(m, tau)) centralizer.push_back(m);

        const std::size_t c = centralizer.size();
        std::vector<std::size_t> pick(static_cast<std::size_t>(rank - 1), 0);
        while (true) {
            std::vector<Perm> matchings = {identity_perm(pairs)};
            for (std::size_t i : pick) matchings.push_back(centralizer[i]);
            if (tuple_connected_bipartite(pairs, matchings)) ++fixed_total;

            std::size_t d = 0;
            while (d < pick.size() && ++pick[d] == c) pick[d++] = 0;
            if (d == pick.size()) break;
        }
    }
    if (fixed_total % nfact != 0)
        throw InternalConsistencyError("fixed-tuple total " + std::to_string(fixed_total) +
                                       " is not a multiple of " + std::to_string(nfact));
    return fixed_total / nfact;
}

std::vector<std::uint64_t> melon_tree_counts(int rank, int max_pairs) {
    if (rank < 2 || max_pairs < 1)
        throw InvalidArgumentError("melon growth needs rank >= 2 and max_pairs >= 1");
    std::map<std::string, ColoredGraph> level;
    {
        const ColoredGraph elementary = make_graph(rank, std::vector<Perm>(
                                                             static_cast<std::size_t>(rank),
                                                             identity_perm(1)));
        level.emplace(canonical_form(elementary).key(), elementary);
    }
    std::vector<std::uint64_t> counts = {1};
    for (int p = 2; p <= max_pairs; ++p) {
        std::map<std::string, ColoredGraph> next;
        for (const auto& [key, g] : level) {
            (void)key;
            for (int c = 0; c < rank; ++c)
                for (int w = 0; w < g.pairs; ++w) {
                    const ColoredGraph grown = insert_melon(g, c, w);
                    const CanonicalForm cf = canonical_form(grown);
                    next.emplace(cf.key(), from_canonical(cf));
                }
        }
        counts.push_back(next.size());
        level = std::move(next);
    }
    return counts;
}

namespace {

Slot slot_of(int global) { return Slot{global / 2, global % 2}; }

bool stays_connected_without(const FeynmanDiagram& d, std::size_t skip) {
    std::vector<int> parent(static_cast<std::size_t>(d.vertices));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[static_cast<std::size_t>(v)] != v) v = parent[static_cast<std::size_t>(v)];
        return v;
    };
    for (std::size_t i = 0; i < d.props.size(); ++i) {
        if (i == skip) continue;
        parent[static_cast<std::size_t>(find(d.props[i].white.vertex))] =
            find(d.props[i].black.vertex);
    }
    const int root = find(0);
    for (int v = 1; v < d.vertices; ++v)
        if (find(v) != root) return false;
    return true;
}

bool one_particle_irreducible(const FeynmanDiagram& d) {
    for (std::size_t i = 0; i < d.props.size(); ++i)
        if (!stays_connected_without(d, i)) return false;
    return true;
}

// A 2-pair bubble splits into two field/conjugate halves in two ways (white w
// with black w, or white w with black 1 - w). Colors whose edges cross
// between the halves transfer their blocks; a vertex is crossing symmetric
// when both splittings transfer the same block multiset, keep the same
// parallel multiset, and the transfer is neither empty nor everything.
bool bubble_crossing_symmetric(const ModelSpec& model, const ColoredGraph& bubble) {
    std::multiset<int> transfer[2], parallel[2];
    int transfer_sum[2] = {0, 0};
    for (int x = 0; x < 2; ++x)
        for (int c = 0; c < bubble.rank; ++c) {
            const bool crossing = bubble.matchings[static_cast<std::size_t>(c)][0] != x;
            const int dim = model.block_dims[static_cast<std::size_t>(c)];
            if (crossing) {
                transfer[x].insert(dim);
                transfer_sum[x] += dim;
            } else {
                parallel[x].insert(dim);
            }
        }
    return transfer[0] == transfer[1] && parallel[0] == parallel[1] && transfer_sum[0] > 0 &&
           transfer_sum[0] < model.total_dim();
}

bool model_crossing_symmetric(const ModelSpec& model) {
    for (const ColoredGraph& bubble : model_bubbles(model))
        if (!bubble_crossing_symmetric(model, bubble)) return false;
    return true;
}

Fraction four_point_hat(const ModelSpec& model) {
    const std::vector<ColoredGraph> bubbles = model_bubbles(model);
    const int nvariants = static_cast<int>(bubbles.size());
    // Tree vertex at one interaction: 2 conjugate externals onto 2 white
    // slots, 2 field externals onto 2 black slots, symmetry weight 1/2.
    const Fraction tree = Fraction(4, 2) * Fraction(nvariants);

    Fraction divergent(0);
    for (int t1 = 0; t1 < nvariants; ++t1)
        for (int t2 = 0; t2 < nvariants; ++t2)
            for (int wmask = 0; wmask < 16; ++wmask) {
                if (std::popcount(static_cast<unsigned>(wmask)) != 2) continue;
                std::vector<int> whites;
                for (int i = 0; i < 4; ++i)
                    if (wmask & (1 << i)) whites.push_back(i);
                for (int bmask = 0; bmask < 16; ++bmask) {
                    if (std::popcount(static_cast<unsigned>(bmask)) != 2) continue;
                    std::vector<int> blacks;
                    for (int i = 0; i < 4; ++i)
                        if (bmask & (1 << i)) blacks.push_back(i);
                    for (int flip = 0; flip < 2; ++flip) {
                        const std::vector<PropLine> props = {
                            {slot_of(whites[0]), slot_of(blacks[static_cast<std::size_t>(flip)])},
                            {slot_of(whites[1]),
                             slot_of(blacks[static_cast<std::size_t>(1 - flip)])}};
                        const FeynmanDiagram d = make_diagram(model, 2, {t1, t2}, props);
                        if (!is_diagram_connected(d)) continue;
                        if (!one_particle_irreducible(d)) continue;
                        const DivergenceReport rep = divergence_degree(build_strands(model, d), model);
                        // 4 external labelings, each with weight (1/2!) (1/2)^2.
                        if (rep.delta >= 0) divergent = divergent + Fraction(4, 8);
                    }
                }
            }
    return divergent / tree;
}

Fraction two_point_hat(const ModelSpec& model) {
    const std::vector<ColoredGraph> bubbles = model_bubbles(model);
    Fraction total(0);
    for (int t = 0; t < static_cast<int>(bubbles.size()); ++t)
        for (int w = 0; w < 2; ++w)
            for (int b = 0; b < 2; ++b) {
                const FeynmanDiagram d =
                    make_diagram(model, 1, {t}, {{Slot{0, w}, Slot{0, b}}});
                const DivergenceReport rep = divergence_degree(build_strands(model, d), model);
                if (rep.delta < 0 || !rep.routed) continue;
                int covered = 0;
                for (int block : rep.covered_blocks)
                    covered += model.block_dims[static_cast<std::size_t>(block)];
                total = total + Fraction(1, 2) * Fraction(covered, model.total_dim());
            }
    return total;
}

} // namespace

WickCoefficients wick_coefficients(const ModelSpec& model) {
    WickCoefficients wc;
    wc.a_hat = four_point_hat(model);
    wc.b_hat = two_point_hat(model);
    wc.orbit_factor = model_crossing_symmetric(model) ? 2 : 1;
    wc.a = (wc.a_hat * Fraction(wc.orbit_factor)).as_integer();
    wc.b = (wc.b_hat * Fraction(wc.orbit_factor)).as_integer();
    return wc;
}

double brute_divergent_sum(int box, double mass2) {
    if (box < 0 || box > 64) throw ResourceLimitError("plain quadruple loop kept to box <= 64");
    if (mass2 <= 0.0) throw InvalidArgumentError("mass squared must be positive");
    double sum = 0.0, comp = 0.0;
    for (int q1 = -box; q1 <= box; ++q1)
        for (int q2 = -box; q2 <= box; ++q2)
            for (int q3 = -box; q3 <= box; ++q3)
                for (int q4 = -box; q4 <= box; ++q4) {
                    const double s = static_cast<double>(q1) * q1 + static_cast<double>(q2) * q2 +
                                     static_cast<double>(q3) * q3 + static_cast<double>(q4) * q4;
                    const double denom = s + mass2;
                    const double term = 1.0 / (denom * denom);
                    const double y = term - comp;
                    const double t = sum + y;
                    comp = (t - sum) - y;
                    sum = t;
                }
    return sum;
}

unsigned long long direct_moment(const ColoredGraph& bubble, int ndim) {
    if (ndim < 1) throw InvalidArgumentError("index range must be at least 1");
    if (bubble.pairs > 4) throw ResourceLimitError("explicit enumeration kept to pairs <= 4");
    const int d = bubble.rank;
    const int n = bubble.pairs;
    const int nvars = d * n;
    if (std::pow(static_cast<double>(ndim), nvars) > 2.0e7)
        throw ResourceLimitError("too many edge assignments: " + std::to_string(ndim) + "^" +
                                 std::to_string(nvars));

    std::vector<Perm> inv(static_cast<std::size_t>(d));
    for (int c = 0; c < d; ++c) inv[static_cast<std::size_t>(c)] = inverse(bubble.matchings[static_cast<std::size_t>(c)]);

    const std::vector<Perm>& pairings = cached_permutations(n);
    std::vector<int> vars(static_cast<std::size_t>(nvars), 0);
    unsigned long long total = 0;
    while (true) {
        // Edge (c, w) carries vars[c * n + w]; the white tuple reads its own
        // edges, the black tuple the edges arriving at it.
        std::vector<char> match(static_cast<std::size_t>(n * n), 1);
        for (int w = 0; w < n; ++w)
            for (int b = 0; b < n; ++b)
                for (int c = 0; c < d; ++c) {
                    const int white_var = vars[static_cast<std::size_t>(c * n + w)];
                    const int black_var =
                        vars[static_cast<std::size_t>(c * n + inv[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)])];
                    if (white_var != black_var) {
                        match[static_cast<std::size_t>(w * n + b)] = 0;
                        break;
                    }
                }
        for (const Perm& sigma : pairings) {
            bool all = true;
            for (int w = 0; w < n && all; ++w)
                all = match[static_cast<std::size_t>(w * n + sigma[static_cast<std::size_t>(w)])] != 0;
            if (all) ++total;
        }

        int pos = 0;
        while (pos < nvars && ++vars[static_cast<std::size_t>(pos)] == ndim) vars[static_cast<std::size_t>(pos++)] = 0;
        if (pos == nvars) break;
    }
    return total;
}

} // namespace tensortrack::testing
