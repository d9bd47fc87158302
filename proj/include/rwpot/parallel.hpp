#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace rwpot {

// Process-wide default worker count used by estimators that are not handed
// an explicit value. Set once by the CLI.
int default_threads();
void set_default_threads(int threads);

// Runs job(i) for i in [0, count) on up to `threads` workers (0: the default)
// and returns the results indexed by job. Callers reduce in index order, so outputs do not
// depend on the worker count.
template <typename Result, typename Job>
std::vector<Result> parallel_map(std::size_t count, int threads, Job&& job) {
  std::vector<Result> out(count);
  const std::size_t workers =
      std::min<std::size_t>(count, static_cast<std::size_t>(std::max(1, threads > 0 ? threads : default_threads())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) out[i] = job(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          out[i] = job(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
          next = count;
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}


}  // namespace rwpot
