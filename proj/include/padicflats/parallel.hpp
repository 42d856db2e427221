#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace padicflats {

/// 0 means one worker per logical core.
inline unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Splits [0, total) into contiguous chunks, one per worker, and calls
/// fn(worker, begin, end) on each. The first exception is rethrown.
template <class Fn>
void parallel_chunks(std::uint64_t total, unsigned workers, Fn&& fn) {
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(resolve_workers(workers), 1, std::max<std::uint64_t>(total, 1)));
  if (workers == 1) {
    fn(0u, std::uint64_t{0}, total);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = total * w / workers;
    const std::uint64_t end = total * (w + 1) / workers;
    threads.emplace_back([&, w, begin, end] {
      try {
        fn(w, begin, end);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace padicflats
