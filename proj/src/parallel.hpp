#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace cswp {

/// Runs fn(i) for i in [0, n) on up to `workers` threads using a static
/// interleaved schedule. fn must write only to slot i of its outputs. If any
/// call throws, the exception of the lowest failing index is rethrown.
template <class Fn>
void parallel_for(std::size_t n, int workers, Fn&& fn) {
  const std::size_t w = std::clamp<std::size_t>(workers < 1 ? 1 : static_cast<std::size_t>(workers), 1, n == 0 ? 1 : n);
  std::vector<std::exception_ptr> errors(n);
  auto run = [&](std::size_t start) {
    for (std::size_t i = start; i < n; i += w) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (w == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t t = 0; t < w; ++t) pool.emplace_back(run, t);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace cswp
