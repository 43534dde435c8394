#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace zetalab {

// Runs body(begin, end) over contiguous index chunks. Each index must be
// independent and write only to its own output slot; under that contract
// results are identical for any thread count.
inline void parallel_for(std::size_t n, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  std::size_t nt = std::max<unsigned>(threads, 1);
  nt = std::min<std::size_t>(nt, n);
  if (nt == 1) {
    body(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(nt - 1);
  std::size_t chunk = (n + nt - 1) / nt;
  for (std::size_t w = 1; w < nt; ++w) {
    std::size_t b = w * chunk;
    std::size_t e = std::min(n, b + chunk);
    if (b >= e) break;
    pool.emplace_back(body, b, e);
  }
  body(0, std::min(n, chunk));
  for (auto& th : pool) th.join();
}

inline unsigned default_thread_count() {
  unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : hc;
}

}  // namespace zetalab
