#ifndef GFLAB_PARALLEL_HPP
#define GFLAB_PARALLEL_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace gflab {

// Execution mode for grid sweeps. `parallel` uses OpenMP when the library
// was built with it and falls back to the serial path otherwise. Both modes
// produce identical results: cell evaluations are independent and all
// reductions run sequentially over the sorted cell index.
enum class ExecMode { serial, parallel };

ExecMode default_exec_mode() noexcept;
void set_default_exec_mode(ExecMode mode) noexcept;

// Number of threads the parallel mode would use (1 without OpenMP).
int sweep_threads() noexcept;
void set_sweep_threads(int n) noexcept;

// Evaluates fn(i) for i in [0, n) into a vector. Exceptions thrown by cells
// are captured and the first one (lowest index wins on the serial path,
// unspecified on the parallel path) is rethrown after the loop finishes.
std::vector<double> map_indexed(std::size_t n, ExecMode mode,
                                const std::function<double(std::size_t)>& fn);

// Runs body(i) for i in [0, n); the body writes results into caller-owned
// slots, one per index. Same exception contract as map_indexed.
void for_indexed(std::size_t n, ExecMode mode,
                 const std::function<void(std::size_t)>& body);

// Deterministic reductions: strictly in index order.
double max_abs_in_order(std::span<const double> values);
double sum_in_order(std::span<const double> values);

}  // namespace gflab

#endif
