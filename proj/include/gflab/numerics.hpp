#ifndef GFLAB_NUMERICS_HPP
#define GFLAB_NUMERICS_HPP

#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace gflab {

// Result of a log-log least-squares fit of |value| against epsilon,
// i.e. the measured m of a value ~ C * eps^m claim.
struct OrderEstimate {
  double exponent = 0.0;       // fitted m; +inf when saturated
  double prefactor_log = 0.0;  // fitted log(C), natural log
  double residual_rms = 0.0;
  int n_points_used = 0;
  double window_min = 0.0;  // epsilon range actually used by the fit
  double window_max = 0.0;
  bool saturated = false;  // fewer than 2 samples above the floor
};

// Composite Gauss-Legendre quadrature of f over [a, b] with the given number
// of equal panels and nodes per panel. Exact (up to rounding) for polynomials
// of degree <= 2*nodes - 1 on each panel.
double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int nodes = 16);

// [eps0, eps0*ratio, ...] of length count; requires eps0 > 0, 0 < ratio < 1,
// count >= 2.
std::vector<double> geometric_grid(double eps0, double ratio, int count);

// Least-squares slope of log|value| vs log(eps) over the samples whose
// |value| exceeds `floor`. Samples at exactly zero (or below the floor) are
// excluded; when fewer than two remain the estimate is marked saturated with
// a +inf exponent.
OrderEstimate fit_order(std::span<const std::pair<double, double>> samples,
                        double floor = 1e-300);

constexpr double kDefaultFitFloor = 1e-300;

// Default sweep grid: 2^-4 .. 2^-14 in halving steps.
std::vector<double> default_eps_grid();

}  // namespace gflab

#endif
