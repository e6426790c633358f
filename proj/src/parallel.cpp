#include "exeval/parallel.hpp"

#include <atomic>

namespace exeval {

namespace {
std::atomic<int> g_max_threads{0};
}

void set_max_threads(int n) { g_max_threads.store(n < 0 ? 0 : n); }

int max_threads() { return g_max_threads.load(); }

bool openmp_enabled() {
#ifdef _OPENMP
  return true;
#else
  return false;
#endif
}

namespace detail {

int effective_threads() {
#ifdef _OPENMP
  const int requested = g_max_threads.load();
  const int hw = omp_get_max_threads();
  if (requested <= 0) return hw;
  return requested < hw ? requested : hw;
#else
  return 1;
#endif
}

}  // namespace detail
}  // namespace exeval
