#include "gflab/testing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gflab/errors.hpp"
#include "gflab/report_io.hpp"

namespace gflab {

namespace {

std::vector<double> linspace(Interval k, int n) {
  std::vector<double> xs(n);
  if (n == 1) {
    xs[0] = 0.5 * (k.lo + k.hi);
    return xs;
  }
  for (int i = 0; i < n; ++i)
    xs[i] = k.lo + (k.hi - k.lo) * i / static_cast<double>(n - 1);
  return xs;
}

std::string joined_ids(std::span<const BoundedFamily> families) {
  std::string id;
  for (const BoundedFamily& f : families) {
    if (!id.empty()) id += "+";
    id += f.id;
  }
  return id;
}

std::vector<TestFunction> select_members(std::span<const BoundedFamily> families,
                                         const MomentProfile& profile,
                                         double tol) {
  std::vector<TestFunction> selected;
  for (const BoundedFamily& f : families)
    for (const TestFunction& m : f.members)
      if (verify_moments(m, profile, tol).pass) selected.push_back(m);
  return selected;
}

// Evaluates |cell| over the (eps, member, x) grid and reduces to the per-eps
// sup. Cell evaluations may run on the OpenMP path; the reduction is always
// sequential in index order, so both paths give identical curves.
SupCurve sup_sweep(
    std::span<const double> eps_grid, std::span<const TestFunction> members,
    std::span<const double> xs, ExecMode exec,
    const std::function<double(const TestFunction&, double, double)>& cell) {
  const std::size_t ne = eps_grid.size();
  const std::size_t nm = members.size();
  const std::size_t nx = xs.size();
  const std::vector<double> values =
      map_indexed(ne * nm * nx, exec, [&](std::size_t i) {
        const std::size_t ie = i / (nm * nx);
        const std::size_t im = (i / nx) % nm;
        const std::size_t ix = i % nx;
        return cell(members[im], eps_grid[ie], xs[ix]);
      });
  SupCurve curve;
  curve.points.reserve(ne);
  for (std::size_t ie = 0; ie < ne; ++ie) {
    const std::span<const double> slice{values.data() + ie * nm * nx, nm * nx};
    curve.points.emplace_back(eps_grid[ie], max_abs_in_order(slice));
  }
  return curve;
}

Cplx deriv_eval(const Representative& rep, const TestFunction& phi, double x,
                int order) {
  if (order < 0) throw std::invalid_argument("deriv_eval: negative order");
  if (order == 0) return rep.eval(phi, x);
  if (rep.analytic_dx) return rep.analytic_dx(phi, x, order);
  const double h = 1e-4 * (1.0 + std::abs(x));
  if (order == 1)
    return (rep.eval(phi, x + h) - rep.eval(phi, x - h)) / (2.0 * h);
  if (order == 2)
    return (rep.eval(phi, x + h) - 2.0 * rep.eval(phi, x) +
            rep.eval(phi, x - h)) /
           (h * h);
  throw std::invalid_argument(
      "deriv_eval: finite differences cover orders <= 2; supply analytic_dx");
}

NegligibilityReport negligibility_sweep(const Representative& rep, Interval K,
                                        int n_target,
                                        std::span<const BoundedFamily> families,
                                        std::pair<int, int> q_range,
                                        int derivative_order,
                                        const SweepConfig& cfg) {
  NegligibilityReport report;
  report.K = K;
  report.n_target = n_target;
  report.family_id = joined_ids(families);
  report.derivative_order = derivative_order;

  const std::vector<double> xs = linspace(K, cfg.x_samples);
  for (int q = q_range.first; q <= q_range.second; ++q) {
    const std::vector<TestFunction> members =
        select_members(families, MomentProfile::exact(q), cfg.moment_tol);
    if (members.empty()) {
      report.warnings.push_back("q=" + std::to_string(q) +
                                ": no member certified exact-A_q, skipped");
      continue;
    }
    SupCurve curve = sup_sweep(
        cfg.eps_grid, members, xs, cfg.exec,
        [&](const TestFunction& m, double eps, double x) {
          return std::abs(deriv_eval(rep, scale(m, eps), x, derivative_order));
        });
    report.per_q_orders[q] = fit_order(curve.points, cfg.fit_floor);
    report.per_q_curves[q] = std::move(curve);
  }

  for (const auto& [q, est] : report.per_q_orders) {
    if (est.exponent >= n_target - cfg.order_tolerance) {
      report.q_found = q;
      break;
    }
  }
  report.pass = report.q_found.has_value();
  return report;
}

}  // namespace

Cplx eval_scaled(const Representative& rep, const TestFunction& phi, double eps,
                 double x) {
  if (!(eps > 0.0)) throw std::invalid_argument("eval_scaled: eps <= 0");
  if (std::abs(moment(phi, 0) - 1.0) > 1e-6)
    throw std::invalid_argument("eval_scaled: mollifier mass is not 1");
  return rep.eval(scale(phi, eps), x);
}

NegligibilityReport test_negligible_c0(const Representative& rep, Interval K,
                                       int n_target,
                                       std::span<const BoundedFamily> families,
                                       std::pair<int, int> q_range,
                                       const SweepConfig& cfg) {
  return negligibility_sweep(rep, K, n_target, families, q_range, 0, cfg);
}

DerivativeNegligibilityReport test_negligible_c1(
    const Representative& rep, Interval K, int alpha_max, int n_target,
    std::span<const BoundedFamily> families, std::pair<int, int> q_range,
    const SweepConfig& cfg) {
  DerivativeNegligibilityReport report;
  report.pass = true;
  for (int alpha = 0; alpha <= alpha_max; ++alpha) {
    report.per_order.push_back(
        negligibility_sweep(rep, K, n_target, families, q_range, alpha, cfg));
    report.pass = report.pass && report.per_order.back().pass;
  }
  return report;
}

ModeratenessReport test_moderate(const Representative& rep, Interval K,
                                 std::span<const BoundedFamily> families,
                                 const SweepConfig& cfg) {
  ModeratenessReport report;
  report.K = K;
  report.family_id = joined_ids(families);
  report.n_max_growth = cfg.n_max_growth;

  const std::vector<TestFunction> members =
      select_members(families, MomentProfile::exact(0), cfg.moment_tol);
  if (members.empty())
    throw std::invalid_argument("test_moderate: no unit-mass member");
  const std::vector<double> xs = linspace(K, cfg.x_samples);
  report.curve =
      sup_sweep(cfg.eps_grid, members, xs, cfg.exec,
                [&](const TestFunction& m, double eps, double x) {
                  return std::abs(rep.eval(scale(m, eps), x));
                });
  report.growth = fit_order(report.curve.points, cfg.fit_floor);
  report.moderate =
      report.growth.exponent >= -cfg.n_max_growth - cfg.order_tolerance;
  return report;
}

Cplx directional_d1(const Representative& rep, const TestFunction& phi,
                    std::span<const TestFunction> directions, double x, int k) {
  if (k != 1 && k != 2)
    throw std::invalid_argument("directional_d1: k must be 1 or 2");
  if (directions.empty())
    throw std::invalid_argument("directional_d1: no direction");
  for (const TestFunction& psi : directions)
    if (std::abs(moment(psi, 0)) > 1e-8)
      throw std::invalid_argument("directional_d1: direction has nonzero mass");

  const TestFunction& psi1 = directions[0];
  const TestFunction& psi2 = directions[directions.size() > 1 ? 1 : 0];

  const auto stencil = [&](double t) -> Cplx {
    if (k == 1) {
      const std::pair<double, TestFunction> plus[] = {{1.0, phi}, {t, psi1}};
      const std::pair<double, TestFunction> minus[] = {{1.0, phi}, {-t, psi1}};
      return (rep.eval(linear_combine(plus), x) -
              rep.eval(linear_combine(minus), x)) /
             (2.0 * t);
    }
    const auto at = [&](double s1, double s2) {
      const std::pair<double, TestFunction> terms[] = {
          {1.0, phi}, {s1 * t, psi1}, {s2 * t, psi2}};
      return rep.eval(linear_combine(terms), x);
    };
    return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * t * t);
  };

  // Two Richardson steps over t, t/2, t/4 (central stencils, O(t^2) error).
  const double t0 = 1e-2;
  const Cplx d0 = stencil(t0);
  const Cplx d1 = stencil(t0 / 2.0);
  const Cplx d2 = stencil(t0 / 4.0);
  const Cplx r0 = (4.0 * d1 - d0) / 3.0;
  const Cplx r1 = (4.0 * d2 - d1) / 3.0;
  return (16.0 * r1 - r0) / 15.0;
}

std::vector<double> landau_eps_grid() {
  return geometric_grid(0.25, std::pow(2.0, -0.5), 7);
}

LandauReport demo_c0_implies_c1(const Representative& rep, Interval K,
                                int n_target, int q,
                                std::span<const BoundedFamily> families,
                                const SweepConfig& cfg) {
  NegligibilityReport c0 =
      test_negligible_c0(rep, K, n_target, families, {q, q}, cfg);
  if (!c0.pass)
    throw PrerequisiteError("demo_c0_implies_c1: c0 fails at the given (n, q)",
                            negligibility_report_to_json(c0).dump(2));
  ModeratenessReport mod = test_moderate(rep, K, families, cfg);
  if (!mod.moderate)
    throw PrerequisiteError("demo_c0_implies_c1: representative not moderate",
                            moderateness_report_to_json(mod).dump(2));

  LandauReport report;
  report.n_target = n_target;
  report.q = q;

  // The enlarged compact of the proof: K + B_{delta/2} with delta = 1 on the
  // whole line, clipped to the representative's x-domain.
  Interval L{std::max(K.lo - 0.5, rep.x_domain.lo),
             std::min(K.hi + 0.5, rep.x_domain.hi)};

  const std::vector<TestFunction> members =
      select_members(families, MomentProfile::exact(q), cfg.moment_tol);
  if (members.empty())
    throw std::invalid_argument("demo_c0_implies_c1: no exact-A_q member");

  // Growth of the second x-derivative at the unit-mass level fixes N.
  const std::vector<TestFunction> mass_members =
      select_members(families, MomentProfile::exact(0), cfg.moment_tol);
  const std::vector<double> ls = linspace(L, cfg.x_samples);
  SupCurve second = sup_sweep(cfg.eps_grid, mass_members, ls, cfg.exec,
                              [&](const TestFunction& m, double eps, double x) {
                                return std::abs(
                                    deriv_eval(rep, scale(m, eps), x, 2));
                              });
  report.second_diff_growth = fit_order(second.points, cfg.fit_floor);
  report.n_growth_measured =
      report.second_diff_growth.saturated
          ? 0.0
          : std::max(0.0, -report.second_diff_growth.exponent);

  const double step_power = n_target + report.n_growth_measured;
  const std::vector<double> xs = linspace(K, cfg.x_samples);

  const auto terms_at = [&](const TestFunction& m, double eps, double x) {
    const TestFunction phi = scale(m, eps);
    const double delta = std::pow(eps, step_power);
    const Cplx r0 = rep.eval(phi, x);
    const Cplx r1 = rep.eval(phi, x + delta);
    const Cplx dq = (r1 - r0) / delta;
    Cplx d2;
    if (rep.analytic_dx) {
      d2 = rep.analytic_dx(phi, x + 0.5 * delta, 2);
    } else {
      const Cplx rm = rep.eval(phi, x + 0.5 * delta);
      d2 = (r1 - 2.0 * rm + r0) / (0.25 * delta * delta);
    }
    const Cplx rem = 0.5 * d2 * delta;
    return std::array<Cplx, 3>{dq, rem, dq - rem};
  };

  for (int which = 0; which < 3; ++which) {
    SupCurve curve = sup_sweep(cfg.eps_grid, members, xs, cfg.exec,
                               [&](const TestFunction& m, double eps, double x) {
                                 return std::abs(terms_at(m, eps, x)[which]);
                               });
    OrderEstimate est = fit_order(curve.points, cfg.fit_floor);
    switch (which) {
      case 0:
        report.diff_quotient_order = est;
        report.diff_quotient_curve = std::move(curve);
        break;
      case 1:
        report.remainder_order = est;
        report.remainder_curve = std::move(curve);
        break;
      default:
        report.derivative_order = est;
        report.derivative_curve = std::move(curve);
        break;
    }
  }
  return report;
}

BoundedFamily standard_family(int q, double radius) {
  std::vector<TestFunction> members;
  members.push_back(make_Aq(q, radius));
  members.push_back(make_Aq_marked(q, radius));
  members.push_back(make_Aq(q, 1.3 * radius));
  return certify_family("Aq" + std::to_string(q), std::move(members), 2);
}

}  // namespace gflab
