#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace ddforge {

/// Worker count: hardware concurrency capped by the DDFORGE_THREADS
/// environment variable when set to a positive integer.
inline unsigned worker_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("DDFORGE_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && unsigned(cap) < n) n = unsigned(cap);
  }
  return n;
}

/// Runs fn(chunk, begin, end) over a fixed contiguous partition of [0, n).
/// Chunk boundaries depend only on n and the worker count, so callers that
/// merge per-chunk results in chunk order get schedule-independent output.
template <class Fn>
void parallel_chunks(std::size_t n, Fn&& fn) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n ? n : 1);
  if (workers <= 1) {
    fn(std::size_t(0), std::size_t(0), n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t step = (n + workers - 1) / workers;
  for (std::size_t c = 0; c < workers; ++c) {
    const std::size_t begin = c * step;
    const std::size_t end = std::min(n, begin + step);
    if (begin >= end) break;
    pool.emplace_back([&fn, c, begin, end] { fn(c, begin, end); });
  }
  for (auto& t : pool) t.join();
}

}  // namespace ddforge
