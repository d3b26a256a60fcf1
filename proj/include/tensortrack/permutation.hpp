#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <vector>

#include "tensortrack/errors.hpp"

namespace tensortrack {

// A permutation of {0, ..., n-1} stored as its image vector: p[i] is the image
// of i. Used both as an abstract permutation and as a perfect matching from
// white vertex i to black vertex p[i].
using Perm = std::vector<int>;

inline Perm identity_perm(int n) {
    Perm p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

// (a * b)(i) = a(b(i)): apply b first.
inline Perm compose(const Perm& a, const Perm& b) {
    Perm r(b.size());
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = a[static_cast<std::size_t>(b[i])];
    return r;
}

inline Perm inverse(const Perm& p) {
    Perm r(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return r;
}

inline bool is_permutation(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)]) return false;
        seen[static_cast<std::size_t>(v)] = 1;
    }
    return true;
}

inline int cycle_count(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    int cycles = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        ++cycles;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) seen[j] = 1;
    }
    return cycles;
}

inline std::vector<int> cycle_lengths(const Perm& p) {
    std::vector<char> seen(p.size(), 0);
    std::vector<int> lengths;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
            seen[j] = 1;
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end());
    return lengths;
}

inline std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// All permutations of {0,...,n-1} in lexicographic order. Guarded so a typo in
// a caller cannot silently allocate gigabytes.
inline std::vector<Perm> all_permutations(int n, int max_n = 10) {
    if (n < 0 || n > max_n)
        throw ResourceLimitError("permutation enumeration limited to n <= " + std::to_string(max_n) +
                                 ", got n = " + std::to_string(n));
    std::vector<Perm> out;
    Perm p = identity_perm(n);
    out.reserve(static_cast<std::size_t>(factorial_u64(n)));
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

// Shared lexicographic permutation table, built once per n. Hot loops over
// all of S_n (canonicalization, censuses) read from here instead of
// regenerating the table.
inline const std::vector<Perm>& cached_permutations(int n) {
    static std::mutex mu;
    static std::map<int, std::vector<Perm>> cache;
    std::scoped_lock lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, all_permutations(n)).first;
    return it->second;
}

// Decode index k in [0, n!) to the k-th permutation in lexicographic order.
inline Perm nth_permutation(int n, std::uint64_t k) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 0);
    std::vector<std::uint64_t> fact(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) fact[static_cast<std::size_t>(i)] = fact[static_cast<std::size_t>(i - 1)] * static_cast<std::uint64_t>(i);
    Perm p;
    p.reserve(static_cast<std::size_t>(n));
    for (int i = n - 1; i >= 0; --i) {
        std::uint64_t f = fact[static_cast<std::size_t>(i)];
        std::size_t idx = static_cast<std::size_t>(k / f);
        k %= f;
        p.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return p;
}

} // namespace tensortrack
