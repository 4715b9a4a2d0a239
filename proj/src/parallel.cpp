#include "gflab/parallel.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gflab {

namespace {
std::atomic<ExecMode> g_mode{ExecMode::parallel};
std::atomic<int> g_threads{0};  // 0 = OpenMP default
}  // namespace

ExecMode default_exec_mode() noexcept { return g_mode.load(); }
void set_default_exec_mode(ExecMode mode) noexcept { g_mode.store(mode); }

int sweep_threads() noexcept {
#ifdef _OPENMP
  int n = g_threads.load();
  return n > 0 ? n : omp_get_max_threads();
#else
  return 1;
#endif
}

void set_sweep_threads(int n) noexcept { g_threads.store(n); }

void for_indexed(std::size_t n, ExecMode mode,
                 const std::function<void(std::size_t)>& body) {
  if (mode == ExecMode::serial) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::exception_ptr first_error;
  std::mutex error_mutex;
#ifdef _OPENMP
  const int requested = g_threads.load();
#pragma omp parallel for schedule(dynamic) num_threads(requested > 0 ? requested : omp_get_max_threads())
#endif
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      std::lock_guard<std::mutex> lock(error_mutex);
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<double> map_indexed(std::size_t n, ExecMode mode,
                                const std::function<double(std::size_t)>& fn) {
  std::vector<double> out(n);
  for_indexed(n, mode, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

double max_abs_in_order(std::span<const double> values) {
  double m = 0.0;
  for (double v : values) {
    const double a = std::abs(v);
    if (a > m) m = a;
  }
  return m;
}

double sum_in_order(std::span<const double> values) {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

}  // namespace gflab
