#ifndef RRL_PARALLEL_HPP
#define RRL_PARALLEL_HPP

#include <cstdint>
#include <functional>

namespace rrl {

// Worker cap: RRL_THREADS environment variable if set, else the hardware
// concurrency.  Read once per process.
int worker_count();

// Runs body(begin, end, chunk) over a fixed partition of [0, n) into chunks.
// The partition depends only on n, never on the worker count, so per-chunk
// results and RNG substreams stay deterministic; callers merge by chunk id.
void parallel_chunks(std::uint64_t n, const std::function<void(std::uint64_t, std::uint64_t, int)>& body);

}  // namespace rrl

#endif
