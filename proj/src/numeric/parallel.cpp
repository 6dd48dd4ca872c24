#include "numeric/parallel.hpp"

namespace pfc {

namespace {
std::atomic<unsigned> g_threads{0};
}

void set_thread_count(unsigned n) { g_threads = n; }

unsigned thread_count() {
  unsigned n = g_threads;
  if (n) return n;
  unsigned hw = std::thread::hardware_concurrency();
  return std::clamp(hw, 1u, 8u);
}

}  // namespace pfc
