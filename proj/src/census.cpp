#include "tensortrack/census.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>
#include <string>

#include "tensortrack/errors.hpp"
#include "tensortrack/threads.hpp"

namespace tensortrack {

namespace {

// Connectivity of the graph (id, m_1, ..., m_{d-1}) without building a
// ColoredGraph. With color 0 pinned to the identity, white w and black w are
// always together, so a union over whites alone suffices.
bool tuple_connected(const std::vector<const Perm*>& ms, int n) {
    int parent[16];
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (const Perm* m : ms)
        for (int w = 0; w < n; ++w) {
            const int a = find(w);
            const int b = find((*m)[static_cast<std::size_t>(w)]);
            if (a != b) parent[a] = b;
        }
    const int root = find(0);
    for (int w = 1; w < n; ++w)
        if (find(w) != root) return false;
    return true;
}

} // namespace

CensusLevel enumerate_invariants(int rank, int pairs, bool keep_forms, std::uint64_t max_space) {
    return enumerate_invariants_filtered(rank, pairs, nullptr, keep_forms, max_space);
}

CensusLevel enumerate_invariants_filtered(int rank, int pairs,
                                          const std::function<bool(const ColoredGraph&)>& keep,
                                          bool keep_forms, std::uint64_t max_space) {
    if (rank < 1) throw InvalidArgumentError("census rank must be >= 1, got " + std::to_string(rank));
    if (pairs < 1) throw InvalidArgumentError("census pairs must be >= 1, got " + std::to_string(pairs));
    if (pairs > 10) throw ResourceLimitError("census limited to pairs <= 10, got " + std::to_string(pairs));

    const int n = pairs;
    const std::uint64_t nfact = factorial_u64(n);
    const int free_colors = rank - 1;
    std::uint64_t space = 1;
    bool over = false;
    for (int i = 0; i < free_colors && !over; ++i) {
        if (space > max_space / nfact) over = true;
        else space *= nfact;
    }
    if (over || space > max_space)
        throw ResourceLimitError("census search space (" + std::to_string(pairs) + "!)^" +
                                 std::to_string(free_colors) + " exceeds bound " +
                                 std::to_string(max_space));

    const auto& perms = cached_permutations(n);
    std::set<std::string> keys;
    std::mutex merge_mu;

    const std::uint64_t chunk = std::max<std::uint64_t>(512, space / 256 + 1);
    parallel_chunks(space, chunk, [&](std::size_t, std::uint64_t lo, std::uint64_t hi) {
        std::set<std::string> local;
        ColoredGraph g;
        g.rank = rank;
        g.pairs = n;
        g.matchings.assign(static_cast<std::size_t>(rank), identity_perm(n));
        std::vector<const Perm*> ms(static_cast<std::size_t>(free_colors));
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            std::uint64_t rest = idx;
            for (int c = 0; c < free_colors; ++c) {
                ms[static_cast<std::size_t>(c)] = &perms[static_cast<std::size_t>(rest % nfact)];
                rest /= nfact;
            }
            if (!tuple_connected(ms, n)) continue;
            for (int c = 0; c < free_colors; ++c) g.matchings[static_cast<std::size_t>(c + 1)] = *ms[static_cast<std::size_t>(c)];
            if (keep && !keep(g)) continue;
            local.insert(canonical_form(g).key());
        }
        std::scoped_lock lock(merge_mu);
        keys.merge(local);
    });

    CensusLevel level;
    level.rank = rank;
    level.pairs = pairs;
    level.count = keys.size();
    if (keep_forms) {
        level.forms.reserve(keys.size());
        for (const std::string& k : keys) {
            CanonicalForm cf;
            cf.rank = static_cast<int>(static_cast<unsigned char>(k[0]));
            cf.pairs = static_cast<int>(static_cast<unsigned char>(k[1]));
            for (std::size_t i = 2; i + 3 <= k.size(); i += 3)
                cf.edges.push_back({static_cast<int>(static_cast<unsigned char>(k[i])),
                                    static_cast<int>(static_cast<unsigned char>(k[i + 1])),
                                    static_cast<int>(static_cast<unsigned char>(k[i + 2]))});
            level.forms.push_back(std::move(cf));
        }
    }
    return level;
}

CensusResult count_invariants(int rank, int max_pairs, std::uint64_t max_space) {
    if (max_pairs < 1)
        throw InvalidArgumentError("census max_pairs must be >= 1, got " + std::to_string(max_pairs));
    CensusResult result;
    result.rank = rank;
    for (int n = 1; n <= max_pairs; ++n)
        result.levels.push_back(enumerate_invariants(rank, n, false, max_space));
    return result;
}

} // namespace tensortrack
