#include "gflab/testfunction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gflab/errors.hpp"
#include "gflab/numerics.hpp"

namespace gflab {

namespace {

constexpr int kMomentPanels = 64;
constexpr int kMomentNodes = 16;
constexpr int kRefPanels = 96;   // independent check quadrature
constexpr int kRefNodes = 24;

// Horner evaluation of p, p', p'' at u.
void poly_eval(const std::vector<double>& c, double u, double& p, double& dp,
               double& ddp) {
  p = 0.0;
  dp = 0.0;
  ddp = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    ddp = ddp * u + 2.0 * dp;
    dp = dp * u + p;
    p = p * u + *it;
  }
}

}  // namespace

double BumpAtom::value(double xi) const {
  const double u = xi / scale;
  const double r = u / base_radius;
  const double z = 1.0 - r * r;
  if (!(z > 0.0)) return 0.0;
  double p = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) p = p * u + *it;
  return amplitude * p * std::exp(-1.0 / z);
}

double BumpAtom::value_d1(double xi) const {
  const double u = xi / scale;
  const double a = base_radius;
  const double z = 1.0 - (u / a) * (u / a);
  if (!(z > 0.0)) return 0.0;
  double p, dp, ddp;
  poly_eval(coeffs, u, p, dp, ddp);
  const double w = std::exp(-1.0 / z);
  const double dw = -2.0 * u * w / (a * a * z * z);
  return amplitude / scale * (dp * w + p * dw);
}

double BumpAtom::value_d2(double xi) const {
  const double u = xi / scale;
  const double a = base_radius;
  const double a2 = a * a;
  const double z = 1.0 - (u / a) * (u / a);
  if (!(z > 0.0)) return 0.0;
  double p, dp, ddp;
  poly_eval(coeffs, u, p, dp, ddp);
  const double w = std::exp(-1.0 / z);
  const double dw = -2.0 * u * w / (a2 * z * z);
  const double ddw =
      w * (-2.0 / (a2 * z * z) - 8.0 * u * u / (a2 * a2 * z * z * z) +
           4.0 * u * u / (a2 * a2 * z * z * z * z));
  return amplitude / (scale * scale) * (ddp * w + 2.0 * dp * dw + p * ddw);
}

TestFunction::TestFunction(BumpAtom atom) : atoms_{std::move(atom)} {}
TestFunction::TestFunction(std::vector<BumpAtom> atoms)
    : atoms_(std::move(atoms)) {}

double TestFunction::operator()(double xi) const {
  double s = 0.0;
  for (const BumpAtom& atom : atoms_) s += atom.value(xi);
  return s;
}

double TestFunction::derivative(double xi, int order) const {
  if (order < 0) throw std::invalid_argument("derivative: negative order");
  switch (order) {
    case 0:
      return (*this)(xi);
    case 1: {
      double s = 0.0;
      for (const BumpAtom& atom : atoms_) s += atom.value_d1(xi);
      return s;
    }
    case 2: {
      double s = 0.0;
      for (const BumpAtom& atom : atoms_) s += atom.value_d2(xi);
      return s;
    }
    default: {
      const double h = 1e-3 * std::max(0.1, support_radius());
      const double f0 = derivative(xi, order - 2);
      const double fp = derivative(xi + h, order - 2);
      const double fm = derivative(xi - h, order - 2);
      return (fp - 2.0 * f0 + fm) / (h * h);
    }
  }
}

double TestFunction::support_radius() const {
  double r = 0.0;
  for (const BumpAtom& atom : atoms_) r = std::max(r, atom.support_radius());
  return r;
}

TestFunction make_bump(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("make_bump: radius <= 0");
  BumpAtom atom;
  atom.base_radius = radius;
  return TestFunction(atom);
}

TestFunction scale(const TestFunction& phi, double eps) {
  if (!(eps > 0.0)) throw std::invalid_argument("scale: eps <= 0");
  std::vector<BumpAtom> atoms = phi.atoms();
  for (BumpAtom& atom : atoms) {
    atom.scale *= eps;
    atom.amplitude /= eps;
  }
  return TestFunction(std::move(atoms));
}

double moment(const TestFunction& phi, int k) {
  if (k < 0) throw std::invalid_argument("moment: negative order");
  const double r = phi.support_radius();
  if (r == 0.0) return 0.0;
  return integrate([&](double xi) { return std::pow(xi, k) * phi(xi); }, -r, r,
                   kMomentPanels, kMomentNodes);
}

double moment_ref(const TestFunction& phi, int k) {
  if (k < 0) throw std::invalid_argument("moment_ref: negative order");
  const double r = phi.support_radius();
  if (r == 0.0) return 0.0;
  return integrate([&](double xi) { return std::pow(xi, k) * phi(xi); }, -r, r,
                   kRefPanels, kRefNodes);
}

std::vector<double> moments_upto(const TestFunction& phi, int kmax) {
  std::vector<double> m(kmax + 1);
  for (int k = 0; k <= kmax; ++k) m[k] = moment(phi, k);
  return m;
}

double half_moment(const TestFunction& phi) {
  const double r = phi.support_radius();
  if (r == 0.0) return 0.0;
  const double s = std::sqrt(r);
  return integrate(
      [&](double u) {
        const double u2 = u * u;
        return 2.0 * u2 * (phi(u2) + phi(-u2));
      },
      0.0, s, kMomentPanels, kMomentNodes);
}

double l2_inner(const TestFunction& phi) {
  const double r = phi.support_radius();
  if (r == 0.0) return 0.0;
  return integrate(
      [&](double xi) {
        const double v = phi(xi);
        return v * v;
      },
      -r, r, kMomentPanels, kMomentNodes);
}

double abs_mass_bound(const TestFunction& phi) {
  const double r = phi.support_radius();
  if (r == 0.0) return 0.0;
  const double v = integrate([&](double xi) { return std::abs(phi(xi)); }, -r,
                             r, 256, kMomentNodes);
  return 1.01 * v + 1e-300;
}

// ---------------------------------------------------------------------------
// Hankel moment systems
// ---------------------------------------------------------------------------

namespace {

struct DenseLU {
  int n = 0;
  std::vector<double> a;  // row-major, factored in place
  std::vector<int> piv;
};

DenseLU lu_factor(std::vector<double> a, int n, double* condition_out) {
  DenseLU lu;
  lu.n = n;
  lu.piv.resize(n);
  for (int col = 0, row; col < n; ++col) {
    row = col;
    for (int i = col + 1; i < n; ++i)
      if (std::abs(a[i * n + col]) > std::abs(a[row * n + col])) row = i;
    lu.piv[col] = row;
    if (row != col)
      for (int j = 0; j < n; ++j) std::swap(a[col * n + j], a[row * n + j]);
    const double pivot = a[col * n + col];
    if (pivot == 0.0 || !std::isfinite(pivot))
      throw ConstructionError("moment system singular",
                              std::numeric_limits<double>::infinity());
    for (int i = col + 1; i < n; ++i) {
      const double f = a[i * n + col] / pivot;
      a[i * n + col] = f;
      for (int j = col + 1; j < n; ++j) a[i * n + j] -= f * a[col * n + j];
    }
  }
  lu.a = std::move(a);
  (void)condition_out;
  return lu;
}

std::vector<double> lu_solve(const DenseLU& lu, std::vector<double> b) {
  const int n = lu.n;
  for (int i = 0; i < n; ++i)
    if (lu.piv[i] != i) std::swap(b[i], b[lu.piv[i]]);
  for (int i = 1; i < n; ++i)
    for (int j = 0; j < i; ++j) b[i] -= lu.a[i * n + j] * b[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) b[i] -= lu.a[i * n + j] * b[j];
    b[i] /= lu.a[i * n + i];
  }
  return b;
}

double norm1(const std::vector<double>& a, int n) {
  double best = 0.0;
  for (int j = 0; j < n; ++j) {
    double col = 0.0;
    for (int i = 0; i < n; ++i) col += std::abs(a[i * n + j]);
    best = std::max(best, col);
  }
  return best;
}

double condition_1norm(const std::vector<double>& matrix, const DenseLU& lu) {
  const int n = lu.n;
  double inv_norm = 0.0;
  for (int j = 0; j < n; ++j) {
    std::vector<double> e(n, 0.0);
    e[j] = 1.0;
    const std::vector<double> col = lu_solve(lu, std::move(e));
    double sum = 0.0;
    for (double v : col) sum += std::abs(v);
    inv_norm = std::max(inv_norm, sum);
  }
  return norm1(matrix, n) * inv_norm;
}

}  // namespace

MollifierBuild build_with_moments(std::span<const std::pair<int, double>> pinned,
                                  int upto, double radius) {
  if (upto < 0) throw std::invalid_argument("build_with_moments: upto < 0");
  if (!(radius > 0.0))
    throw std::invalid_argument("build_with_moments: radius <= 0");
  for (const auto& [k, v] : pinned)
    if (k < 0 || k > upto)
      throw std::invalid_argument("build_with_moments: pinned index out of range");

  const TestFunction bump = make_bump(radius);
  const int n = upto + 1;

  // Moments of the bump; odd ones vanish by symmetry.
  std::vector<double> bump_moments(2 * upto + 1, 0.0);
  for (int m = 0; m <= 2 * upto; m += 2)
    bump_moments[m] = integrate(
        [&](double xi) { return std::pow(xi, m) * bump(xi); }, -radius, radius,
        kRefPanels, kMomentNodes);

  std::vector<double> matrix(n * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) matrix[j * n + k] = bump_moments[j + k];

  std::vector<double> target(n, 0.0);
  for (const auto& [k, v] : pinned) target[k] = v;

  const DenseLU lu = lu_factor(matrix, n, nullptr);
  const double condition = condition_1norm(matrix, lu);
  if (!(condition < 1e15))
    throw ConstructionError("moment system too ill-conditioned", condition);

  std::vector<double> coeffs = lu_solve(lu, target);

  // Refinement against quadrature-measured moments: the Hankel system is
  // ill-conditioned enough at higher q that one solve leaves residuals far
  // above the certification tolerance.
  MollifierBuild build;
  double best_residual = std::numeric_limits<double>::infinity();
  std::vector<double> best_coeffs = coeffs;
  for (int step = 0; step < 12; ++step) {
    BumpAtom atom;
    atom.base_radius = radius;
    atom.coeffs = coeffs;
    const TestFunction candidate(atom);
    const std::vector<double> measured = moments_upto(candidate, upto);
    std::vector<double> residual(n);
    double max_res = 0.0;
    for (int j = 0; j < n; ++j) {
      residual[j] = target[j] - measured[j];
      max_res = std::max(max_res, std::abs(residual[j]));
    }
    if (max_res < best_residual) {
      best_residual = max_res;
      best_coeffs = coeffs;
    }
    build.refinement_steps = step;
    if (max_res < 1e-13) break;
    const std::vector<double> update = lu_solve(lu, residual);
    for (int j = 0; j < n; ++j) coeffs[j] += update[j];
  }

  if (!(best_residual < 1e-9))
    throw ConstructionError("moment residuals failed to converge (max " +
                                std::to_string(best_residual) + ")",
                            condition);

  BumpAtom atom;
  atom.base_radius = radius;
  atom.coeffs = std::move(best_coeffs);
  build.fn = TestFunction(atom);
  build.condition_estimate = condition;
  build.max_residual = best_residual;
  return build;
}

TestFunction make_Aq(int q, double radius) {
  if (q < 0) throw std::invalid_argument("make_Aq: q < 0");
  const std::pair<int, double> pinned[] = {{0, 1.0}};
  return build_with_moments(pinned, q, radius).fn;
}

TestFunction make_moment_selector(int k, int upto, double radius) {
  if (k < 0) throw std::invalid_argument("make_moment_selector: k < 0");
  if (upto < k) throw std::invalid_argument("make_moment_selector: upto < k");
  const std::pair<int, double> pinned[] = {{k, 1.0}};
  return build_with_moments(pinned, upto, radius).fn;
}

TestFunction make_Aq_marked(int q, double radius, double marker) {
  if (q < 0) throw std::invalid_argument("make_Aq_marked: q < 0");
  const std::pair<int, double> pinned[] = {{0, 1.0}, {q + 1, marker}};
  return build_with_moments(pinned, q + 3, radius).fn;
}

TestFunction linear_combine(
    std::span<const std::pair<double, TestFunction>> terms) {
  if (terms.empty()) throw std::invalid_argument("linear_combine: empty list");
  for (const auto& [c, fn] : terms)
    for (const BumpAtom& atom : fn.atoms())
      if (!std::isfinite(atom.support_radius()) || atom.support_radius() <= 0.0)
        throw std::invalid_argument("linear_combine: unbounded support");

  // Atoms sharing (base_radius, scale) merge into a single polynomial.
  std::vector<BumpAtom> merged;
  for (const auto& [c, fn] : terms) {
    for (const BumpAtom& atom : fn.atoms()) {
      auto it = std::find_if(merged.begin(), merged.end(), [&](const BumpAtom& m) {
        return m.base_radius == atom.base_radius && m.scale == atom.scale;
      });
      if (it == merged.end()) {
        merged.push_back(BumpAtom{atom.base_radius, {}, atom.scale, 1.0});
        it = std::prev(merged.end());
      }
      if (it->coeffs.size() < atom.coeffs.size())
        it->coeffs.resize(atom.coeffs.size(), 0.0);
      for (std::size_t j = 0; j < atom.coeffs.size(); ++j)
        it->coeffs[j] += c * atom.amplitude * atom.coeffs[j];
    }
  }
  return TestFunction(std::move(merged));
}

MomentReport verify_moments(const TestFunction& phi, const MomentProfile& profile,
                            double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("verify_moments: tol <= 0");
  MomentReport report;
  report.tol = tol;
  if (profile.kind == MomentProfile::Kind::unconstrained) return report;
  for (int j = 0; j <= profile.q; ++j) {
    const double target =
        (profile.kind == MomentProfile::Kind::exact_aq && j == 0) ? 1.0 : 0.0;
    const double res = std::abs(moment_ref(phi, j) - target);
    report.residuals.emplace_back(j, res);
    if (res > tol) report.pass = false;
  }
  return report;
}

BoundedFamily certify_family(std::string id, std::vector<TestFunction> members,
                             int derivative_bound_order) {
  if (members.empty())
    throw std::invalid_argument("certify_family: no members");
  if (derivative_bound_order < 0)
    throw std::invalid_argument("certify_family: negative derivative order");
  BoundedFamily family;
  family.id = std::move(id);
  family.derivative_bound_order = derivative_bound_order;
  for (const TestFunction& m : members)
    family.common_radius = std::max(family.common_radius, m.support_radius());
  family.certified_bounds.assign(derivative_bound_order + 1, 0.0);
  const int samples = 513;
  for (const TestFunction& m : members)
    for (int d = 0; d <= derivative_bound_order; ++d)
      for (int i = 0; i < samples; ++i) {
        const double x =
            -family.common_radius + 2.0 * family.common_radius * i / (samples - 1);
        family.certified_bounds[d] =
            std::max(family.certified_bounds[d], std::abs(m.derivative(x, d)));
      }
  family.members = std::move(members);
  return family;
}

bool recheck_family(const BoundedFamily& family) {
  const int samples = 513;
  for (const TestFunction& m : family.members) {
    if (m.support_radius() > family.common_radius * (1.0 + 1e-12)) return false;
    for (int d = 0; d <= family.derivative_bound_order; ++d)
      for (int i = 0; i < samples; ++i) {
        const double x =
            -family.common_radius + 2.0 * family.common_radius * i / (samples - 1);
        if (std::abs(m.derivative(x, d)) >
            family.certified_bounds[d] * (1.0 + 1e-12) + 1e-300)
          return false;
      }
  }
  return true;
}

TestObjectPath make_asymptotic_path(int q, const TestFunction& base,
                                    const TestFunction& direction,
                                    std::function<double(double)> x_modulation) {
  if (q < 0) throw std::invalid_argument("make_asymptotic_path: q < 0");
  if (std::abs(moment(direction, 0)) > 1e-8)
    throw std::invalid_argument("make_asymptotic_path: direction has nonzero mass");
  if (std::abs(moment(base, 0) - 1.0) > 1e-6)
    throw std::invalid_argument("make_asymptotic_path: base mass != 1");

  TestObjectPath path;
  path.q = q;
  path.tag = x_modulation
                 ? TypeTag{ParamKind::eps_x, MomentKind::asym_global_derivs}
                 : TypeTag{ParamKind::eps, MomentKind::asym};
  path.generator = [q, base, direction, rho = std::move(x_modulation)](
                       double eps, double x) {
    const double t = std::pow(eps, q) * (rho ? rho(x) : 1.0);
    const std::pair<double, TestFunction> terms[] = {{1.0, base},
                                                     {t, direction}};
    return linear_combine(terms);
  };
  return path;
}

}  // namespace gflab
