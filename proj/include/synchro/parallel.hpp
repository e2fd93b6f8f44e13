#pragma once

// Deterministic worker pool. Tasks grab indices from an atomic counter and
// write only to their own slot, so the result is a pure function of the
// task bodies no matter how many threads run or how they interleave.

#include <atomic>
#include <thread>
#include <vector>

namespace synchro {

template <class F>
void parallel_for(int count, int threads, F&& fn) {
  if (threads <= 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int k = std::min(threads, count);
  pool.reserve(static_cast<std::size_t>(k));
  for (int t = 0; t < k; ++t)
    pool.emplace_back([&] {
      for (int i; (i = next.fetch_add(1)) < count;) fn(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace synchro
