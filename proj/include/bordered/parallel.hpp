#pragma once

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>
#include <vector>

namespace bordered {

/// Runs f(k) for every k in [0, n) on up to `jobs` threads (0 means one per
/// hardware thread).  f must be thread-safe.
inline void parallel_for(int n, int jobs, const std::function<void(int)>& f) {
  if (jobs <= 0) jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, std::max(n, 1));
  if (jobs == 1) {
    for (int k = 0; k < n; ++k) f(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int k; (k = next.fetch_add(1)) < n;) f(k);
    });
  for (auto& th : pool) th.join();
}

}  // namespace bordered
