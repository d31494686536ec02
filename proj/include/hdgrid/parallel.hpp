#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace hdgrid {

// Runs fn(begin, end, chunk) over `threads` contiguous chunks of [0, count).
// The partition depends only on (count, threads); callers reduce per-chunk
// results in chunk order so the outcome does not depend on scheduling.
template <typename Fn>
void parallel_chunks(std::size_t count, int threads, Fn&& fn) {
  const std::size_t workers =
      std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, count == 0 ? 1 : count));
  if (workers == 1) {
    fn(std::size_t{0}, count, std::size_t{0});
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = count * w / workers;
    const std::size_t end = count * (w + 1) / workers;
    pool.emplace_back([&, begin, end, w] {
      try {
        fn(begin, end, w);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::size_t chunk_count(std::size_t count, int threads) {
  return std::max<std::size_t>(1, std::min<std::size_t>(threads < 1 ? 1 : threads, count == 0 ? 1 : count));
}

}  // namespace hdgrid
