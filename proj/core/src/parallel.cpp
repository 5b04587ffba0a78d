#include "distboot/parallel.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace distboot {

void parallel_for(long count, int threads,
                  const std::function<void(long)>& fn) {
  if (count <= 0) return;
  long t = threads <= 0
               ? static_cast<long>(std::thread::hardware_concurrency())
               : threads;
  if (t < 1) t = 1;
  if (t > count) t = count;
  if (t == 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::mutex err_mutex;
  std::exception_ptr first_error;
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(t));
  for (long w = 0; w < t; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const long i = next.fetch_add(1);
        if (i >= count) break;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(err_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    });
  }
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace distboot
