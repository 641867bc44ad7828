#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace treecomp {

// Resolves a requested worker count; 0 means one per hardware thread.
inline std::size_t resolve_threads(std::size_t requested) {
  if (requested != 0) {
    return requested;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

// Splits [0, n) into contiguous chunks, folds each chunk with
// `body(begin, end)` on its own thread, and returns the chunk results in
// index order. Callers merge them left to right, so any associative merge
// gives the same answer as a sequential pass. If several chunks throw, the
// exception from the lowest chunk is rethrown.
template <class Acc, class Body>
std::vector<Acc> chunked_fold(std::size_t n, std::size_t threads, Body body) {
  threads = std::max<std::size_t>(1, std::min(resolve_threads(threads), n));
  if (threads <= 1) {
    return {body(std::size_t{0}, n)};
  }
  std::vector<Acc> results(threads);
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    const std::size_t chunk = (n + threads - 1) / threads;
    for (std::size_t t = 0; t < threads; ++t) {
      const std::size_t begin = std::min(n, t * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      workers.emplace_back([&, t, begin, end] {
        try {
          results[t] = body(begin, end);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return results;
}

}  // namespace treecomp
