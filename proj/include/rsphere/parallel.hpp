#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace rsphere {

/// Caps internal parallelism. `0` restores the default (hardware concurrency).
void set_thread_count(int threads);
int thread_count();

/// Calls body(i) for every i in [0, chunks). Work is handed out dynamically,
/// but callers define the chunks, so any reduction done per chunk and then
/// combined in chunk order is independent of the thread count. The first
/// exception thrown by a body is rethrown on the calling thread.
void parallel_chunks(std::size_t chunks, const std::function<void(std::size_t)>& body);

/// Splits [begin, end) into fixed pieces of `grain` and calls body(lo, hi).
void parallel_range(std::int64_t begin, std::int64_t end, std::int64_t grain,
                    const std::function<void(std::int64_t, std::int64_t)>& body);

}  // namespace rsphere
