#pragma once

// Index-parallel loops whose results land in preallocated slots, plus the
// order-fixed reductions used on those slots. Output never depends on the
// thread count.

#include <cmath>
#include <cstddef>
#include <exception>
#include <mutex>
#include <span>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace levyaf {

enum class Execution { Serial, Parallel };

/// body(i) for i in [0, n). Serial runs in index order and is the reference
/// the OpenMP variant is tested against. The first exception thrown by any
/// iteration is rethrown on the calling thread.
template <class Body>
void parallel_for_index(std::size_t n, Execution exec, Body&& body) {
  if (exec == Execution::Serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
}

inline void set_thread_count(int threads) {
#ifdef _OPENMP
  if (threads > 0) omp_set_num_threads(threads);
#else
  (void)threads;
#endif
}

struct MeanStderr {
  double mean = 0.0;
  double stderr = 0.0;
};

/// Sample mean and iid standard error, summed in index order.
inline MeanStderr mean_and_stderr(std::span<const double> xs) {
  MeanStderr out;
  const auto n = static_cast<double>(xs.size());
  if (xs.empty()) return out;
  double sum = 0.0;
  for (double x : xs) sum += x;
  out.mean = sum / n;
  if (xs.size() < 2) return out;
  double ss = 0.0;
  for (double x : xs) ss += (x - out.mean) * (x - out.mean);
  out.stderr = std::sqrt(ss / (n - 1.0) / n);
  return out;
}

/// Mean with a batch-means standard error over contiguous batches.
inline MeanStderr batch_means(std::span<const double> xs, std::size_t n_batches = 32) {
  MeanStderr out;
  const std::size_t n = xs.size();
  if (n == 0) return out;
  if (n_batches > n) n_batches = n;
  double total = 0.0;
  for (double x : xs) total += x;
  out.mean = total / static_cast<double>(n);
  if (n_batches < 2) return out;
  double ss = 0.0;
  for (std::size_t b = 0; b < n_batches; ++b) {
    const std::size_t lo = b * n / n_batches, hi = (b + 1) * n / n_batches;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += xs[i];
    const double m = s / static_cast<double>(hi - lo);
    ss += (m - out.mean) * (m - out.mean);
  }
  const auto b = static_cast<double>(n_batches);
  out.stderr = std::sqrt(ss / (b * (b - 1.0)));
  return out;
}

}  // namespace levyaf
