#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qheat::detail {

// out[i] = f(i) for i < count on a small worker pool; the order of results is
// fixed by index, not by completion.
template <class R, class F>
std::vector<R> parallel_map(std::size_t count, F&& f) {
  std::vector<R> out(count);
  const std::size_t workers = std::min<std::size_t>(count, std::max(1u, std::thread::hardware_concurrency()));
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) out[i] = f(i);
  };
  std::vector<std::jthread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  return out;
}

}  // namespace qheat::detail
