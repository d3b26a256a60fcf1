#include "tensortrack/colored_graph.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "tensortrack/errors.hpp"

namespace tensortrack {

namespace {

// Disjoint-set union over a fixed universe.
struct Dsu {
    std::vector<int> parent;

    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

void check_shape(int rank, int pairs) {
    if (rank < 1) throw MalformedGraphError("rank must be >= 1, got " + std::to_string(rank));
    if (pairs < 1) throw MalformedGraphError("pairs must be >= 1, got " + std::to_string(pairs));
}

} // namespace

std::string CanonicalForm::key() const {
    std::string k;
    k.reserve(8 + edges.size() * 3);
    k.push_back(static_cast<char>(rank));
    k.push_back(static_cast<char>(pairs));
    for (const auto& e : edges) {
        k.push_back(static_cast<char>(e[0]));
        k.push_back(static_cast<char>(e[1]));
        k.push_back(static_cast<char>(e[2]));
    }
    return k;
}

int FaceSet::total_faces() const {
    int n = 0;
    for (const auto& p : pairs) n += static_cast<int>(p.lengths.size());
    return n;
}

int FaceSet::total_length() const {
    int n = 0;
    for (const auto& p : pairs)
        for (int l : p.lengths) n += l;
    return n;
}

ColoredGraph validate(int rank, int pairs, const std::vector<EdgeTriple>& edges) {
    check_shape(rank, pairs);
    ColoredGraph g;
    g.rank = rank;
    g.pairs = pairs;
    g.matchings.assign(static_cast<std::size_t>(rank), Perm(static_cast<std::size_t>(pairs), -1));
    std::vector<std::vector<char>> black_used(static_cast<std::size_t>(rank),
                                              std::vector<char>(static_cast<std::size_t>(pairs), 0));

    for (const auto& e : edges) {
        const int c = e[0], w = e[1], b = e[2];
        if (c < 0 || c >= rank)
            throw MalformedGraphError("edge color " + std::to_string(c) + " out of range [0, " +
                                      std::to_string(rank - 1) + "]");
        if (w < 1 || w > pairs)
            throw MalformedGraphError("white label " + std::to_string(w) + " out of range [1, " +
                                      std::to_string(pairs) + "]");
        if (b < 1 || b > pairs)
            throw MalformedGraphError("black label " + std::to_string(b) + " out of range [1, " +
                                      std::to_string(pairs) + "]");
        auto& slot = g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w - 1)];
        if (slot != -1)
            throw MalformedGraphError("duplicate slot: color " + std::to_string(c) + " at white " +
                                      std::to_string(w));
        auto& bslot = black_used[static_cast<std::size_t>(c)][static_cast<std::size_t>(b - 1)];
        if (bslot)
            throw MalformedGraphError("duplicate slot: color " + std::to_string(c) + " at black " +
                                      std::to_string(b));
        slot = b - 1;
        bslot = 1;
    }

    for (int c = 0; c < rank; ++c)
        for (int w = 0; w < pairs; ++w)
            if (g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] == -1)
                throw IncompletenessError("missing edge of color " + std::to_string(c) + " at white " +
                                          std::to_string(w + 1));
    return g;
}

ColoredGraph make_graph(int rank, std::vector<Perm> matchings) {
    check_shape(rank, matchings.empty() ? 0 : static_cast<int>(matchings[0].size()));
    if (static_cast<int>(matchings.size()) != rank)
        throw MalformedGraphError("expected " + std::to_string(rank) + " matchings, got " +
                                  std::to_string(matchings.size()));
    const std::size_t n = matchings[0].size();
    for (int c = 0; c < rank; ++c) {
        if (matchings[static_cast<std::size_t>(c)].size() != n)
            throw MalformedGraphError("matching of color " + std::to_string(c) + " has wrong size");
        if (!is_permutation(matchings[static_cast<std::size_t>(c)]))
            throw MalformedGraphError("matching of color " + std::to_string(c) + " is not a bijection");
    }
    ColoredGraph g;
    g.rank = rank;
    g.pairs = static_cast<int>(n);
    g.matchings = std::move(matchings);
    return g;
}

bool is_connected(const ColoredGraph& g) {
    const int n = g.pairs;
    Dsu dsu(2 * n);
    for (int c = 0; c < g.rank; ++c)
        for (int w = 0; w < n; ++w)
            dsu.unite(w, n + g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)]);
    const int root = dsu.find(0);
    for (int v = 1; v < 2 * n; ++v)
        if (dsu.find(v) != root) return false;
    return true;
}

ColoredGraph relabel(const ColoredGraph& g, const Perm& white_map, const Perm& black_map) {
    if (static_cast<int>(white_map.size()) != g.pairs || static_cast<int>(black_map.size()) != g.pairs)
        throw InvalidArgumentError("relabel maps must have size " + std::to_string(g.pairs));
    if (!is_permutation(white_map) || !is_permutation(black_map))
        throw InvalidArgumentError("relabel maps must be permutations");
    ColoredGraph out = g;
    for (int c = 0; c < g.rank; ++c)
        for (int w = 0; w < g.pairs; ++w)
            out.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(white_map[static_cast<std::size_t>(w)])] =
                black_map[static_cast<std::size_t>(g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)])];
    return out;
}

// The minimal edge list forces color 0 into identity position: edges of color
// 0 are (0, w, m0'(w)) and the least possible block is m0' = id, reachable for
// any white relabeling by choosing the black relabeling accordingly. So the
// candidates are indexed by white relabelings tau alone, with the remaining
// colors becoming tau ∘ (m0^{-1} m_c) ∘ tau^{-1}.
CanonicalForm canonical_form(const ColoredGraph& g) {
    const int n = g.pairs;
    const int k = g.rank;

    std::vector<Perm> q;
    q.reserve(static_cast<std::size_t>(k - 1));
    const Perm m0_inv = inverse(g.matchings[0]);
    for (int c = 1; c < k; ++c) q.push_back(compose(m0_inv, g.matchings[static_cast<std::size_t>(c)]));

    std::vector<int> best((static_cast<std::size_t>(k - 1)) * static_cast<std::size_t>(n),
                          std::numeric_limits<int>::max());
    std::vector<int> cand(best.size());

    const auto& taus = cached_permutations(n);
    Perm tau_inv(static_cast<std::size_t>(n));
    for (const Perm& tau : taus) {
        for (int i = 0; i < n; ++i) tau_inv[static_cast<std::size_t>(tau[static_cast<std::size_t>(i)])] = i;
        bool worse = false;
        bool better = false;
        std::size_t pos = 0;
        for (int ci = 0; ci < k - 1 && !worse && !better; ++ci) {
            const Perm& qc = q[static_cast<std::size_t>(ci)];
            for (int w = 0; w < n; ++w) {
                const int img = tau[static_cast<std::size_t>(qc[static_cast<std::size_t>(tau_inv[static_cast<std::size_t>(w)])])];
                cand[pos] = img;
                if (img > best[pos]) { worse = true; break; }
                if (img < best[pos]) { better = true; ++pos; break; }
                ++pos;
            }
        }
        if (worse) continue;
        if (better) {
            // Finish filling the remaining entries, no comparisons needed.
            for (std::size_t p = pos; p < cand.size(); ++p) {
                const int ci = static_cast<int>(p) / n;
                const int w = static_cast<int>(p) % n;
                cand[p] = tau[static_cast<std::size_t>(q[static_cast<std::size_t>(ci)][static_cast<std::size_t>(tau_inv[static_cast<std::size_t>(w)])])];
            }
            best = cand;
        }
        // Equal prefix to the end means tau reproduces the current best.
    }

    CanonicalForm cf;
    cf.rank = k;
    cf.pairs = n;
    cf.edges.reserve(static_cast<std::size_t>(k) * static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) cf.edges.push_back({0, w + 1, w + 1});
    for (int c = 1; c < k; ++c)
        for (int w = 0; w < n; ++w)
            cf.edges.push_back({c, w + 1, best[static_cast<std::size_t>((c - 1) * n + w)] + 1});
    return cf;
}

ColoredGraph from_canonical(const CanonicalForm& cf) {
    return validate(cf.rank, cf.pairs, cf.edges);
}

FaceSet faces(const ColoredGraph& g) {
    FaceSet fs;
    for (int a = 0; a < g.rank; ++a)
        for (int b = a + 1; b < g.rank; ++b) {
            FacePair fp;
            fp.color_a = a;
            fp.color_b = b;
            fp.lengths = face_lengths(g, a, b);
            fs.pairs.push_back(std::move(fp));
        }
    return fs;
}

std::vector<int> face_lengths(const ColoredGraph& g, int color_a, int color_b) {
    if (color_a < 0 || color_a >= g.rank || color_b < 0 || color_b >= g.rank || color_a == color_b)
        throw InvalidArgumentError("face_lengths needs two distinct colors in [0, " +
                                   std::to_string(g.rank - 1) + "]");
    const Perm cyc = compose(inverse(g.matchings[static_cast<std::size_t>(color_b)]),
                             g.matchings[static_cast<std::size_t>(color_a)]);
    std::vector<int> lengths = cycle_lengths(cyc);
    for (int& l : lengths) l *= 2;
    return lengths;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

} // namespace tensortrack
