#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace ymh {

/// Calls fn(t) for t in [0, trials), optionally across hardware threads.
/// fn must only write to its own trial's slot; callers reduce afterwards, so
/// results do not depend on the thread count.
template <typename Fn>
void for_each_trial(int trials, bool parallel, Fn&& fn) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  if (!parallel || hw == 1 || trials < 2) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  const int workers = static_cast<int>(std::min<unsigned>(hw, static_cast<unsigned>(trials)));
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w)
    pool.emplace_back([&, w] {
      for (int t = w; t < trials; t += workers) fn(t);
    });
  for (auto& th : pool) th.join();
}

}  // namespace ymh
