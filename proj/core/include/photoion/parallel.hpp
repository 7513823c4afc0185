#pragma once

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace photoion {

// Process-wide default worker count (0 = hardware concurrency); the CLI
// sets this from --threads.
inline std::atomic<int> g_default_threads{0};

inline int resolve_threads(int requested) {
  if (requested <= 0) requested = g_default_threads.load();
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

// f(i) for i in [0, n); work items must be independent. The first exception
// thrown by a worker is rethrown on the calling thread.
template <class F>
void parallel_for(std::size_t n, F&& f, int threads = 0) {
  const int nt = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(resolve_threads(threads)),
                            n ? n : 1));
  if (nt <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr err;
  std::mutex err_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n || failed.load()) return;
      try {
        f(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(err_mutex);
        if (!err) err = std::current_exception();
        failed.store(true);
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(nt);
  for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (err) std::rethrow_exception(err);
}

}  // namespace photoion
