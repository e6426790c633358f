#pragma once

#include <cstddef>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace exeval {

// Thread count used by the OpenMP kernels. 0 keeps the OpenMP default.
void set_max_threads(int n);
int max_threads();
bool openmp_enabled();

namespace detail {
int effective_threads();
}

// Runs fn(i) for i in [0, n). Iterations must be independent and write to
// disjoint slots, so the result never depends on the schedule.
template <typename F>
void parallel_for(std::size_t n, F&& fn) {
#ifdef _OPENMP
  if (detail::effective_threads() > 1 && n > 1) {
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic) num_threads(detail::effective_threads())
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(exeval_parallel_for_err)
        if (!err) err = std::current_exception();
      }
    }
    if (err) std::rethrow_exception(err);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

// Serial twin of parallel_for; the tests compare kernel outputs against it.
template <typename F>
void serial_for(std::size_t n, F&& fn) {
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace exeval
