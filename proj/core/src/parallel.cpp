#include "rrl/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rrl {

int worker_count() {
  static const int cached = [] {
    if (const char* env = std::getenv("RRL_THREADS")) {
      int v = std::atoi(env);
      if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
  }();
  return cached;
}

void parallel_chunks(std::uint64_t n, const std::function<void(std::uint64_t, std::uint64_t, int)>& body) {
  if (n == 0) return;
  // Fixed chunking: at most 64 chunks regardless of workers.
  int chunks = static_cast<int>(std::min<std::uint64_t>(n, 64));
  std::uint64_t per = (n + chunks - 1) / chunks;
  int workers = std::min(worker_count(), chunks);
  if (workers <= 1) {
    for (int c = 0; c < chunks; ++c) {
      std::uint64_t b = per * c;
      if (b >= n) break;
      body(b, std::min(n, b + per), c);
    }
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        int c = next.fetch_add(1);
        if (c >= chunks) return;
        std::uint64_t b = per * static_cast<std::uint64_t>(c);
        if (b >= n) return;
        body(b, std::min(n, b + per), c);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rrl
