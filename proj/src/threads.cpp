#include "tensortrack/threads.hpp"

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace tensortrack {

int worker_count() {
    if (const char* env = std::getenv("TENSORTRACK_THREADS")) {
        try {
            const int n = std::stoi(env);
            if (n >= 1) return n;
        } catch (const std::exception&) {
        }
    }
    const unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) return 1;
    return static_cast<int>(hw > 8 ? 8 : hw);
}

std::uint64_t chunk_count(std::uint64_t total, std::uint64_t chunk) {
    return chunk == 0 ? 0 : (total + chunk - 1) / chunk;
}

void parallel_chunks(std::uint64_t total, std::uint64_t chunk,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn) {
    if (total == 0) return;
    const std::uint64_t nchunks = chunk_count(total, chunk);
    const int workers = worker_count();
    if (workers <= 1 || nchunks <= 1) {
        for (std::uint64_t i = 0; i < nchunks; ++i) {
            const std::uint64_t lo = i * chunk;
            const std::uint64_t hi = lo + chunk < total ? lo + chunk : total;
            fn(static_cast<std::size_t>(i), lo, hi);
        }
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            for (std::uint64_t i = static_cast<std::uint64_t>(t); i < nchunks;
                 i += static_cast<std::uint64_t>(workers)) {
                const std::uint64_t lo = i * chunk;
                const std::uint64_t hi = lo + chunk < total ? lo + chunk : total;
                fn(static_cast<std::size_t>(i), lo, hi);
            }
        });
    }
    for (auto& th : pool) th.join();
}

} // namespace tensortrack
