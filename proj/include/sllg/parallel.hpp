#pragma once
#include <cstddef>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sllg {

// Elementwise loops parallelize with OpenMP; every iteration writes its own
// slots, so results do not depend on the thread count. Reductions use a fixed
// chunk decomposition combined in chunk order, which keeps floating-point
// sums bitwise identical for any number of threads.

template <class F>
void parallel_for(std::ptrdiff_t n, F&& body) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

template <class F>
void serial_for(std::ptrdiff_t n, F&& body) {
  for (std::ptrdiff_t i = 0; i < n; ++i) body(i);
}

inline constexpr std::ptrdiff_t kReduceChunk = 4096;

// deterministic parallel sum of f(i) over [0, n)
template <class F>
double parallel_sum(std::ptrdiff_t n, F&& f) {
  if (n <= 0) return 0.0;
  std::ptrdiff_t nchunk = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<double> partial(static_cast<std::size_t>(nchunk), 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (std::ptrdiff_t c = 0; c < nchunk; ++c) {
    double s = 0.0;
    std::ptrdiff_t hi = std::min(n, (c + 1) * kReduceChunk);
    for (std::ptrdiff_t i = c * kReduceChunk; i < hi; ++i) s += f(i);
    partial[static_cast<std::size_t>(c)] = s;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

template <class F>
double serial_sum(std::ptrdiff_t n, F&& f) {
  double s = 0.0;
  for (std::ptrdiff_t i = 0; i < n; ++i) s += f(i);
  return s;
}

// max is associative and exact, so a plain reduction is already deterministic
template <class F>
double parallel_max(std::ptrdiff_t n, F&& f) {
  double m = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(max : m)
#endif
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    double v = f(i);
    if (v > m) m = v;
  }
  return m;
}

inline int max_workers() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

inline void set_workers(int n) {
#ifdef _OPENMP
  if (n > 0) omp_set_num_threads(n);
#else
  (void)n;
#endif
}

}  // namespace sllg
