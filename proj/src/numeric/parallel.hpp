#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "numeric/interval.hpp"

namespace pfc {

// 0 selects the hardware concurrency (capped at 8).
void set_thread_count(unsigned n);
unsigned thread_count();

// Runs fn(i) for i in [0, n) on the worker pool. Workers inherit the caller's
// working precision. The first exception thrown is rethrown here.
template <class Fn>
void parallel_for(size_t n, Fn&& fn) {
  unsigned workers = static_cast<unsigned>(std::min<size_t>(thread_count(), n));
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  mpfr_prec_t prec = working_precision();
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    PrecisionScope scope(prec);
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= n) return;
      {
        std::lock_guard<std::mutex> lock(error_mu);
        if (error) return;
      }
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mu);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace pfc
