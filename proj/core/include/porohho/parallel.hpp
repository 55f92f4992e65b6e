#ifndef POROHHO_PARALLEL_HPP
#define POROHHO_PARALLEL_HPP

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace porohho {

/// Worker count: POROHHO_THREADS environment override, hardware concurrency
/// otherwise.
inline unsigned n_workers() {
  if (const char* env = std::getenv("POROHHO_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return static_cast<unsigned>(n);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

/// Splits [0, count) into contiguous chunks, one worker thread per chunk.
/// Workers must only touch disjoint output slots; reductions are left to the
/// caller so that results do not depend on the schedule.
inline void parallel_for(int count, const std::function<void(int, int)>& body, bool use_threads = true) {
  const unsigned workers = use_threads ? n_workers() : 1;
  if (workers <= 1 || count < 64) {
    body(0, count);
    return;
  }
  std::vector<std::thread> threads;
  const int chunk = (count + static_cast<int>(workers) - 1) / static_cast<int>(workers);
  for (unsigned t = 0; t < workers; ++t) {
    const int begin = static_cast<int>(t) * chunk;
    const int end = std::min(count, begin + chunk);
    if (begin >= end) break;
    threads.emplace_back(body, begin, end);
  }
  for (auto& th : threads) th.join();
}

}  // namespace porohho

#endif
