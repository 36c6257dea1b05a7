#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace indseq {

// Worker count resolution: explicit request > INDSEQ_WORKERS > hardware.
inline int worker_count(int requested = 0) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("INDSEQ_WORKERS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Runs body(i) for i in [begin, end) on `workers` threads.  The body must
// be thread-safe; result aggregation is the caller's job and must not
// depend on execution order.
template <typename Body>
void parallel_for(long begin, long end, int workers, Body&& body) {
  if (end <= begin) return;
  workers = std::min<long>(worker_count(workers), end - begin);
  if (workers <= 1) {
    for (long i = begin; i < end; ++i) body(i);
    return;
  }
  std::atomic<long> next{begin};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (long i = next.fetch_add(1); i < end; i = next.fetch_add(1)) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace indseq
