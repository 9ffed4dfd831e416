// Thread-pool-free parallel loop over an index range. Workers own
// disjoint output slots, so results are identical to the sequential run
// for any thread count. Thread count comes from ACTS_THREADS (default 1).
#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace acts {

inline int env_thread_count() {
  if (const char* env = std::getenv("ACTS_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
    if (n == 0) return int(std::max(1u, std::thread::hardware_concurrency()));
  }
  return 1;
}

template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
  threads = std::min(std::max(threads, 1), count > 0 ? count : 1);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(std::size_t(threads));
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
    });
  for (std::thread& th : pool) th.join();
}

}  // namespace acts
