#include "hambvp/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hambvp {

int default_workers() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  if (const char* env = std::getenv("HAMBVP_WORKERS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) hw = cap;
    } catch (const std::exception&) {
    }
  }
  return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, int workers) {
  if (workers <= 0) workers = default_workers();
  const std::size_t nthreads = std::min<std::size_t>(static_cast<std::size_t>(workers), n);
  if (nthreads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first;
  std::mutex mtx;
  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mtx);
        if (!first) first = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first) std::rethrow_exception(first);
}

}  // namespace hambvp
