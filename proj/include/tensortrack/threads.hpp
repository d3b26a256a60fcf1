#pragma once

#include <cstdint>
#include <functional>

namespace tensortrack {

// Worker count for data-parallel loops: TENSORTRACK_THREADS when set to a
// positive integer, otherwise the hardware concurrency clamped to [1, 8].
int worker_count();

// Run fn(chunk_index, begin, end) over [0, total) split into fixed-size chunks
// distributed round-robin across worker_count() threads. Chunk boundaries
// depend only on `total` and `chunk`, never on the worker count, so any
// chunk-indexed reduction merged in chunk order is reproducible.
void parallel_chunks(std::uint64_t total, std::uint64_t chunk,
                     const std::function<void(std::size_t, std::uint64_t, std::uint64_t)>& fn);

std::uint64_t chunk_count(std::uint64_t total, std::uint64_t chunk);

} // namespace tensortrack
