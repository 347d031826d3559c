#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace shortsum {

struct ExecPolicy {
  // 0 selects std::thread::hardware_concurrency().
  unsigned threads = 0;

  unsigned resolved() const noexcept {
    if (threads != 0) return threads;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
  }
};

// Runs body(i) for i in [0, count) on a small pool. Work items are claimed
// dynamically; callers write results into slot i so output order never
// depends on scheduling. The first exception thrown is rethrown.
template <typename Body>
void parallel_for(std::size_t count, const ExecPolicy& policy, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(policy.resolved(), count == 0 ? 1 : count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(count, std::memory_order_relaxed);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

// Pairwise tree sum in index order; result is independent of thread count.
template <typename T>
T tree_sum(const std::vector<T>& values) {
  if (values.empty()) return T{};
  std::vector<T> level(values);
  while (level.size() > 1) {
    std::vector<T> up((level.size() + 1) / 2);
    for (std::size_t i = 0; i < up.size(); ++i) {
      up[i] = 2 * i + 1 < level.size() ? level[2 * i] + level[2 * i + 1] : level[2 * i];
    }
    level.swap(up);
  }
  return level.front();
}

}  // namespace shortsum
