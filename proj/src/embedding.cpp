#include "gflab/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gflab/numerics.hpp"

namespace gflab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_inside(const Interval& domain, double lo, double hi,
                    const std::string& label) {
  if (lo < domain.lo || hi > domain.hi)
    throw std::domain_error(label + ": evaluation outside declared domain");
}

// Quadrature of g over the support of phi, with panels split at the supplied
// interior break points.
double support_quadrature(const TestFunction& phi,
                          const std::function<double(double)>& g,
                          std::span<const double> breaks, int panels) {
  const double r = phi.support_radius();
  if (r == 0.0) return 0.0;
  std::vector<double> edges{-r, r};
  for (double b : breaks)
    if (b > -r && b < r) edges.push_back(b);
  std::sort(edges.begin(), edges.end());
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = edges[i + 1] - edges[i];
    const int sub = std::max(2, static_cast<int>(std::lround(panels * len / (2.0 * r))));
    total += integrate(g, edges[i], edges[i + 1], sub);
  }
  return total;
}

Interval domain_or_line(Interval domain) {
  if (domain.lo == 0.0 && domain.hi == 0.0) return {-kInf, kInf};
  return domain;
}

}  // namespace

SmoothFn named_smooth(const std::string& name) {
  SmoothFn fn;
  fn.name = name;
  if (name == "sin") {
    fn.f = [](double x) { return std::sin(x); };
    fn.deriv = [](double x, int m) {
      switch (m % 4) {
        case 0: return std::sin(x);
        case 1: return std::cos(x);
        case 2: return -std::sin(x);
        default: return -std::cos(x);
      }
    };
  } else if (name == "cos") {
    fn.f = [](double x) { return std::cos(x); };
    fn.deriv = [](double x, int m) {
      switch (m % 4) {
        case 0: return std::cos(x);
        case 1: return -std::sin(x);
        case 2: return -std::cos(x);
        default: return std::sin(x);
      }
    };
  } else if (name == "exp") {
    fn.f = [](double x) { return std::exp(x); };
    fn.deriv = [](double x, int) { return std::exp(x); };
  } else if (name == "one") {
    fn.f = [](double) { return 1.0; };
    fn.deriv = [](double, int m) { return m == 0 ? 1.0 : 0.0; };
  } else if (name == "x" || name == "x2" || name == "x3") {
    const int degree = name == "x" ? 1 : (name == "x2" ? 2 : 3);
    fn.f = [degree](double x) { return std::pow(x, degree); };
    fn.deriv = [degree](double x, int m) {
      if (m > degree) return 0.0;
      double c = 1.0;
      for (int j = 0; j < m; ++j) c *= degree - j;
      return c * std::pow(x, degree - m);
    };
  } else if (name == "abs") {
    fn.f = [](double x) { return std::abs(x); };
    fn.deriv = [](double, int) -> double {
      throw std::invalid_argument("abs: derivatives not available");
    };
    fn.kinks = {0.0};
  } else {
    throw std::invalid_argument("named_smooth: unknown function '" + name + "'");
  }
  return fn;
}

Representative const_embed(const SmoothFn& f, Interval domain) {
  Representative rep;
  rep.label = "sigma(" + f.name + ")";
  rep.x_domain = domain_or_line(domain);
  const Interval dom = rep.x_domain;
  rep.eval = [f, dom](const TestFunction&, double x) -> Cplx {
    require_inside(dom, x, x, "const_embed");
    return f.f(x);
  };
  if (f.deriv)
    rep.analytic_dx = [f, dom](const TestFunction&, double x, int m) -> Cplx {
      require_inside(dom, x, x, "const_embed");
      return f.deriv(x, m);
    };
  return rep;
}

Representative embed_smooth(const SmoothFn& f, Interval domain, int panels) {
  Representative rep;
  rep.label = "iota(" + f.name + ")";
  rep.x_domain = domain_or_line(domain);
  const Interval dom = rep.x_domain;
  const auto convolve = [f, dom, panels](const TestFunction& phi, double x,
                                         int m) -> double {
    const double r = phi.support_radius();
    require_inside(dom, x - r, x + r, "embed_smooth");
    std::vector<double> breaks;
    for (double kink : f.kinks) breaks.push_back(kink - x);
    return support_quadrature(
        phi,
        [&](double xi) {
          const double fx = m == 0 ? f.f(x + xi) : f.deriv(x + xi, m);
          return fx * phi(xi);
        },
        breaks, panels);
  };
  rep.eval = [convolve](const TestFunction& phi, double x) -> Cplx {
    return convolve(phi, x, 0);
  };
  if (f.deriv)
    rep.analytic_dx = [convolve](const TestFunction& phi, double x,
                                 int m) -> Cplx { return convolve(phi, x, m); };
  return rep;
}

Representative embed_delta() {
  Representative rep;
  rep.label = "iota(delta)";
  rep.eval = [](const TestFunction& phi, double x) -> Cplx { return phi(-x); };
  rep.analytic_dx = [](const TestFunction& phi, double x, int m) -> Cplx {
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * phi.derivative(-x, m);
  };
  return rep;
}

Representative embed_vk(int k) {
  if (k < 0) throw std::invalid_argument("embed_vk: k < 0");
  Representative rep;
  rep.label = "iota(v_" + std::to_string(k) + ")";
  rep.eval = [k](const TestFunction& phi, double x) -> Cplx {
    return support_quadrature(
        phi, [&](double xi) { return std::pow(x + xi, k) * phi(xi); }, {}, 64);
  };
  rep.analytic_dx = [k](const TestFunction& phi, double x, int m) -> Cplx {
    if (m > k) return 0.0;
    double c = 1.0;
    for (int j = 0; j < m; ++j) c *= k - j;
    return c * support_quadrature(
                   phi,
                   [&](double xi) { return std::pow(x + xi, k - m) * phi(xi); },
                   {}, 64);
  };
  return rep;
}

Representative iota_sigma_defect(const SmoothFn& f, Interval domain, int panels) {
  Representative rep;
  rep.label = "iota(" + f.name + ")-sigma(" + f.name + ")";
  rep.x_domain = domain_or_line(domain);
  const Interval dom = rep.x_domain;
  const auto defect = [f, dom, panels](const TestFunction& phi, double x,
                                       int m) -> double {
    const double r = phi.support_radius();
    require_inside(dom, x - r, x + r, "iota_sigma_defect");
    std::vector<double> breaks;
    for (double kink : f.kinks) breaks.push_back(kink - x);
    const double fx = m == 0 ? f.f(x) : f.deriv(x, m);
    return support_quadrature(
        phi,
        [&](double xi) {
          const double fv = m == 0 ? f.f(x + xi) : f.deriv(x + xi, m);
          return (fv - fx) * phi(xi);
        },
        breaks, panels);
  };
  rep.eval = [defect](const TestFunction& phi, double x) -> Cplx {
    return defect(phi, x, 0);
  };
  if (f.deriv)
    rep.analytic_dx = [defect](const TestFunction& phi, double x,
                               int m) -> Cplx { return defect(phi, x, m); };
  return rep;
}

Representative rep_difference(const Representative& a, const Representative& b) {
  Representative rep;
  rep.label = a.label + " - " + b.label;
  rep.x_domain = {std::max(a.x_domain.lo, b.x_domain.lo),
                  std::min(a.x_domain.hi, b.x_domain.hi)};
  rep.eval = [a, b](const TestFunction& phi, double x) {
    return a.eval(phi, x) - b.eval(phi, x);
  };
  if (a.analytic_dx && b.analytic_dx)
    rep.analytic_dx = [a, b](const TestFunction& phi, double x, int m) {
      return a.analytic_dx(phi, x, m) - b.analytic_dx(phi, x, m);
    };
  return rep;
}

Representative rep_product(const Representative& a, const Representative& b) {
  Representative rep;
  rep.label = a.label + " * " + b.label;
  rep.x_domain = {std::max(a.x_domain.lo, b.x_domain.lo),
                  std::min(a.x_domain.hi, b.x_domain.hi)};
  rep.eval = [a, b](const TestFunction& phi, double x) {
    return a.eval(phi, x) * b.eval(phi, x);
  };
  return rep;
}

Representative rep_zero() {
  Representative rep;
  rep.label = "0";
  rep.eval = [](const TestFunction&, double) -> Cplx { return 0.0; };
  rep.analytic_dx = [](const TestFunction&, double, int) -> Cplx { return 0.0; };
  return rep;
}

SweepConfig embedding_sweep_config() {
  SweepConfig cfg;
  cfg.eps_grid = embedding_eps_grid();
  cfg.fit_floor = 1e-13;
  return cfg;
}

std::vector<double> embedding_eps_grid() {
  return geometric_grid(0.25, std::pow(2.0, -0.5), 13);
}

OrderEstimate check_iota_sigma(const SmoothFn& f, int q,
                               std::span<const double> eps_grid, Interval K,
                               const SweepConfig& cfg) {
  const TestFunction phi = make_Aq_marked(q);
  const Representative defect = iota_sigma_defect(f);
  std::vector<std::pair<double, double>> curve;
  const std::size_t nx = static_cast<std::size_t>(cfg.x_samples);
  const std::vector<double> values =
      map_indexed(eps_grid.size() * nx, cfg.exec, [&](std::size_t i) {
        const double eps = eps_grid[i / nx];
        const double x =
            K.lo + (K.hi - K.lo) * (i % nx) / static_cast<double>(nx - 1);
        return std::abs(defect.eval(scale(phi, eps), x));
      });
  for (std::size_t ie = 0; ie < eps_grid.size(); ++ie) {
    const std::span<const double> slice{values.data() + ie * nx, nx};
    curve.emplace_back(eps_grid[ie], max_abs_in_order(slice));
  }
  return fit_order(curve, cfg.fit_floor);
}

OrderEstimate check_product(const SmoothFn& f1, const SmoothFn& f2, int q,
                            std::span<const double> eps_grid, Interval K,
                            const SweepConfig& cfg) {
  const TestFunction phi = make_Aq_marked(q);
  const Representative d1 = iota_sigma_defect(f1);
  const Representative d2 = iota_sigma_defect(f2);
  SmoothFn f12;
  f12.name = f1.name + "*" + f2.name;
  f12.f = [f1, f2](double x) { return f1.f(x) * f2.f(x); };
  f12.deriv = [f1, f2](double x, int m) {
    // Leibniz rule
    double sum = 0.0;
    double binom = 1.0;
    for (int j = 0; j <= m; ++j) {
      sum += binom * f1.deriv(x, j) * f2.deriv(x, m - j);
      binom = binom * (m - j) / (j + 1.0);
    }
    return sum;
  };
  const Representative d12 = iota_sigma_defect(f12);

  // iota(f1) iota(f2) - iota(f1 f2)
  //   = f1 f2 m0 (m0 - 1) + m0 (f1 D2 + f2 D1) + D1 D2 - D12
  // with D the single-quadrature defects and m0 the mollifier mass. Expanded
  // this way the rounding error scales with the defects, not with f.
  const std::size_t nx = static_cast<std::size_t>(cfg.x_samples);
  std::vector<std::pair<double, double>> curve;
  const std::vector<double> values =
      map_indexed(eps_grid.size() * nx, cfg.exec, [&](std::size_t i) {
        const double eps = eps_grid[i / nx];
        const double x =
            K.lo + (K.hi - K.lo) * (i % nx) / static_cast<double>(nx - 1);
        const TestFunction phi_eps = scale(phi, eps);
        const double m0 = moment(phi_eps, 0);
        const Cplx v1 = d1.eval(phi_eps, x);
        const Cplx v2 = d2.eval(phi_eps, x);
        const Cplx v12 = d12.eval(phi_eps, x);
        const Cplx total = f1.f(x) * f2.f(x) * m0 * (m0 - 1.0) +
                           m0 * (f1.f(x) * v2 + f2.f(x) * v1) + v1 * v2 - v12;
        return std::abs(total);
      });
  for (std::size_t ie = 0; ie < eps_grid.size(); ++ie) {
    const std::span<const double> slice{values.data() + ie * nx, nx};
    curve.emplace_back(eps_grid[ie], max_abs_in_order(slice));
  }
  return fit_order(curve, cfg.fit_floor);
}

}  // namespace gflab
