#ifndef GFLAB_TESTING_HPP
#define GFLAB_TESTING_HPP

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gflab/numerics.hpp"
#include "gflab/parallel.hpp"
#include "gflab/testfunction.hpp"

namespace gflab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

using Cplx = std::complex<double>;

// A representative R: (mollifier, base point) -> C in the C-formalism, i.e.
// the mollifier is centered at the origin and translation is absorbed into R.
// analytic_dx, when set, returns the m-th partial x-derivative.
struct Representative {
  std::string label;
  Interval x_domain{-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity()};
  std::function<Cplx(const TestFunction&, double)> eval;
  std::function<Cplx(const TestFunction&, double, int)> analytic_dx;
};

// R(S_eps phi, x). Requires unit mass (the A_0 domain) within 1e-6.
Cplx eval_scaled(const Representative& rep, const TestFunction& phi, double eps,
                 double x);

// Shared sweep parameters. `exec` chooses the serial reference path or the
// OpenMP kernel; both produce identical bytes because cell values land in a
// preallocated grid and every reduction runs in sorted index order.
struct SweepConfig {
  std::vector<double> eps_grid = default_eps_grid();
  int x_samples = 33;
  double order_tolerance = 0.25;
  double fit_floor = kDefaultFitFloor;
  double moment_tol = 1e-8;
  double n_max_growth = 10.0;  // moderateness bound: exponent >= -n_max_growth
  ExecMode exec = default_exec_mode();
};

struct SupCurve {
  std::vector<std::pair<double, double>> points;  // (eps, sup over family x K)
};

struct NegligibilityReport {
  Interval K;
  int n_target = 0;
  std::string family_id;
  int derivative_order = 0;
  std::optional<int> q_found;
  std::map<int, OrderEstimate> per_q_orders;
  std::map<int, SupCurve> per_q_curves;
  std::vector<std::string> warnings;
  bool pass = false;
};

// Condition (0 degree): for each q in q_range, restrict the families to
// members certified exact-A_q, sweep sup |R_eps| over family x K per eps,
// fit the order, and report the least q reaching n_target.
NegligibilityReport test_negligible_c0(const Representative& rep, Interval K,
                                       int n_target,
                                       std::span<const BoundedFamily> families,
                                       std::pair<int, int> q_range,
                                       const SweepConfig& cfg = {});

struct DerivativeNegligibilityReport {
  std::vector<NegligibilityReport> per_order;  // derivative orders 0..alpha_max
  bool pass = false;
};

// Condition (1 degree): as c0 for each x-derivative order 0..alpha_max.
DerivativeNegligibilityReport test_negligible_c1(
    const Representative& rep, Interval K, int alpha_max, int n_target,
    std::span<const BoundedFamily> families, std::pair<int, int> q_range,
    const SweepConfig& cfg = {});

struct ModeratenessReport {
  Interval K;
  std::string family_id;
  OrderEstimate growth;  // fitted exponent of sup |R_eps|; >= -N means moderate
  SupCurve curve;
  double n_max_growth = 10.0;
  bool moderate = false;
};

// Growth sweep at the A_0 level (unit mass only).
ModeratenessReport test_moderate(const Representative& rep, Interval K,
                                 std::span<const BoundedFamily> families,
                                 const SweepConfig& cfg = {});

// k-th Gateaux derivative (k = 1, 2) of R in the mollifier slot at phi, in
// the given zero-mass directions, by symmetric differences in t with two
// Richardson steps.
Cplx directional_d1(const Representative& rep, const TestFunction& phi,
                    std::span<const TestFunction> directions, double x, int k);

// Numerical run of the Taylor/Landau decomposition behind (0) => (1):
//   d_x R_eps(x) = (R_eps(x + delta) - R_eps(x)) / delta
//                  - (1/2) d_x^2 R_eps(x_theta) * delta,  delta = eps^(n+N).
// N is measured from the growth of the second x-difference.
struct LandauReport {
  int n_target = 0;
  int q = 0;
  double n_growth_measured = 0.0;      // the N actually used
  OrderEstimate second_diff_growth;    // fitted order of sup |d_x^2 R_eps|
  OrderEstimate diff_quotient_order;   // first Landau term
  OrderEstimate remainder_order;       // second Landau term
  OrderEstimate derivative_order;      // their difference = finite-diff d_x
  SupCurve diff_quotient_curve;
  SupCurve remainder_curve;
  SupCurve derivative_curve;
};

LandauReport demo_c0_implies_c1(const Representative& rep, Interval K,
                                int n_target, int q,
                                std::span<const BoundedFamily> families,
                                const SweepConfig& cfg = {});

// Default grid for the Landau demo: the difference-quotient term lives at
// step eps^(n+N) and drops below double-precision visibility on the small
// end of the standard grid.
std::vector<double> landau_eps_grid();

// Families used by the CLI and the acceptance suite: exact-A_q members at two
// radii plus a member with a deliberately nonzero (q+1)-st moment so that
// fitted negligibility orders sit at q+1 rather than at the even-symmetry
// bonus order.
BoundedFamily standard_family(int q, double radius = 1.0);

}  // namespace gflab

#endif
