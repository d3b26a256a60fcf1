#include "tensortrack/melons.hpp"

#include <algorithm>

#include "tensortrack/errors.hpp"

namespace tensortrack {

std::vector<Jacket> jackets(int rank) {
    if (rank < 3)
        throw InvalidArgumentError("jackets need rank >= 3, got " + std::to_string(rank));
    std::vector<Jacket> out;
    for (const Perm& p : all_permutations(rank - 1)) {
        Jacket j;
        j.reserve(static_cast<std::size_t>(rank));
        j.push_back(0);
        for (int v : p) j.push_back(v + 1);
        Jacket rev;
        rev.reserve(j.size());
        rev.push_back(0);
        for (auto it = j.rbegin(); it != j.rend() - 1; ++it) rev.push_back(*it);
        if (j <= rev) out.push_back(std::move(j));
    }
    return out;
}

int jacket_genus(const ColoredGraph& g, const Jacket& jacket) {
    const int k = g.rank;
    if (k < 3)
        throw InvalidArgumentError("jacket_genus needs rank >= 3, got " + std::to_string(k));
    if (static_cast<int>(jacket.size()) != k)
        throw InvalidArgumentError("jacket must list all " + std::to_string(k) + " colors");
    {
        std::vector<char> seen(static_cast<std::size_t>(k), 0);
        for (int c : jacket) {
            if (c < 0 || c >= k || seen[static_cast<std::size_t>(c)])
                throw InvalidArgumentError("jacket must be a cyclic order of the colors");
            seen[static_cast<std::size_t>(c)] = 1;
        }
    }
    if (!is_connected(g)) throw InvalidArgumentError("jacket_genus requires a connected graph");

    int F = 0;
    for (int i = 0; i < k; ++i) {
        const int a = jacket[static_cast<std::size_t>(i)];
        const int b = jacket[static_cast<std::size_t>((i + 1) % k)];
        F += static_cast<int>(face_lengths(g, a, b).size());
    }
    const int E = k * g.pairs;
    const int V = 2 * g.pairs;
    const int twice_genus = 2 - F + E - V;
    if (twice_genus < 0 || twice_genus % 2 != 0)
        throw InternalConsistencyError("jacket Euler characteristic gave 2g = " +
                                       std::to_string(twice_genus) + " (F=" + std::to_string(F) +
                                       ", E=" + std::to_string(E) + ", V=" + std::to_string(V) + ")");
    return twice_genus / 2;
}

DegreeReport degree(const ColoredGraph& g) {
    DegreeReport report;
    for (const Jacket& j : jackets(g.rank)) {
        const int genus = jacket_genus(g, j);
        report.omega += genus;
        report.genera.emplace_back(j, genus);
    }
    return report;
}

namespace {

struct Contraction {
    int white = -1;   // 0-based
    int black = -1;   // 0-based
    int missing = -1; // the one color not shared
};

// Find any white/black pair sharing exactly rank-1 colors.
bool find_dipole(const std::vector<Perm>& ms, int n, int k, Contraction& out) {
    std::vector<int> hits(static_cast<std::size_t>(n));
    for (int w = 0; w < n; ++w) {
        std::fill(hits.begin(), hits.end(), 0);
        for (int c = 0; c < k; ++c) ++hits[static_cast<std::size_t>(ms[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)])];
        for (int b = 0; b < n; ++b) {
            if (hits[static_cast<std::size_t>(b)] != k - 1) continue;
            out.white = w;
            out.black = b;
            for (int c = 0; c < k; ++c)
                if (ms[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] != b) {
                    out.missing = c;
                    break;
                }
            return true;
        }
    }
    return false;
}

void contract_dipole(std::vector<Perm>& ms, int& n, int k, const Contraction& d) {
    const int b2 = ms[static_cast<std::size_t>(d.missing)][static_cast<std::size_t>(d.white)];
    const int w2 = static_cast<int>(
        std::find(ms[static_cast<std::size_t>(d.missing)].begin(), ms[static_cast<std::size_t>(d.missing)].end(), d.black) -
        ms[static_cast<std::size_t>(d.missing)].begin());
    ms[static_cast<std::size_t>(d.missing)][static_cast<std::size_t>(w2)] = b2;
    for (int c = 0; c < k; ++c) {
        Perm next(static_cast<std::size_t>(n - 1));
        for (int w = 0; w < n; ++w) {
            if (w == d.white) continue;
            const int b = ms[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
            next[static_cast<std::size_t>(w - (w > d.white ? 1 : 0))] = b - (b > d.black ? 1 : 0);
        }
        ms[static_cast<std::size_t>(c)] = std::move(next);
    }
    --n;
}

} // namespace

bool is_melonic(const ColoredGraph& g, std::vector<std::string>* trace) {
    if (!is_connected(g)) throw InvalidArgumentError("is_melonic requires a connected graph");
    std::vector<Perm> ms = g.matchings;
    int n = g.pairs;
    const int k = g.rank;
    while (n > 1) {
        Contraction d;
        if (!find_dipole(ms, n, k, d)) {
            if (trace)
                trace->push_back("no contractible pair among " + std::to_string(n) + " pairs");
            return false;
        }
        if (trace)
            trace->push_back("contract white " + std::to_string(d.white + 1) + " / black " +
                             std::to_string(d.black + 1) + ", missing color " +
                             std::to_string(d.missing));
        contract_dipole(ms, n, k, d);
    }
    if (trace) trace->push_back("reduced to the elementary pair");
    return true;
}

ColoredGraph insert_melon(const ColoredGraph& g, int color, int white) {
    if (color < 0 || color >= g.rank)
        throw InvalidArgumentError("insert_melon: color " + std::to_string(color) +
                                   " out of range [0, " + std::to_string(g.rank - 1) + "]");
    if (white < 0 || white >= g.pairs)
        throw InvalidArgumentError("insert_melon: white index " + std::to_string(white) +
                                   " out of range [0, " + std::to_string(g.pairs - 1) + "]");
    const int n = g.pairs;
    ColoredGraph out;
    out.rank = g.rank;
    out.pairs = n + 1;
    out.matchings.assign(static_cast<std::size_t>(g.rank), Perm(static_cast<std::size_t>(n + 1)));
    for (int c = 0; c < g.rank; ++c) {
        for (int w = 0; w < n; ++w)
            out.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)] =
                g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(w)];
        // New white n and black n form a dipole over every color but `color`;
        // the split edge is rerouted through them.
        if (c == color) {
            const int b_old = g.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(white)];
            out.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(white)] = n;
            out.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(n)] = b_old;
        } else {
            out.matchings[static_cast<std::size_t>(c)][static_cast<std::size_t>(n)] = n;
        }
    }
    return out;
}

CensusLevel melon_census(int rank, int pairs, bool keep_forms, std::uint64_t max_space) {
    return enumerate_invariants_filtered(
        rank, pairs, [](const ColoredGraph& g) { return is_melonic(g); }, keep_forms, max_space);
}

} // namespace tensortrack
