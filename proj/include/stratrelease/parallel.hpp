#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace stratrelease {

// Worker cap: hardware concurrency, limited by STRATRELEASE_THREADS.
inline std::size_t worker_count() {
  std::size_t n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("STRATRELEASE_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<std::size_t>(n, static_cast<std::size_t>(cap));
  }
  return n;
}

// Static block partition of [0, n). Results must be written to
// index-addressed slots so the final reduction stays deterministic.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  std::size_t workers = std::min(worker_count(), n);
  if (workers <= 1 || n < 1024) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back([&, begin, end] {
      for (std::size_t i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& t : threads) t.join();
}

}  // namespace stratrelease
