#include "gflab/numerics.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

namespace gflab {

namespace {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
};

// Nodes of the n-point Gauss-Legendre rule by Newton iteration on P_n,
// seeded with the Chebyshev-like approximation. Converges to machine
// precision in a handful of steps.
GaussRule make_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Evaluate P_n(x) and P_n'(x) via the three-term recurrence.
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& gauss_rule(int n) {
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
  return it->second;
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 int panels, int nodes) {
  if (!(a <= b)) throw std::invalid_argument("integrate: requires a <= b");
  if (panels < 1) throw std::invalid_argument("integrate: panels < 1");
  if (nodes < 1) throw std::invalid_argument("integrate: nodes < 1");
  if (a == b) return 0.0;

  const GaussRule& rule = gauss_rule(nodes);
  const double h = (b - a) / panels;
  double total = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * h;
    double panel_sum = 0.0;
    for (int j = 0; j < nodes; ++j)
      panel_sum += rule.weights[j] * f(mid + 0.5 * h * rule.nodes[j]);
    total += 0.5 * h * panel_sum;
  }
  return total;
}

std::vector<double> geometric_grid(double eps0, double ratio, int count) {
  if (!(eps0 > 0.0)) throw std::invalid_argument("geometric_grid: eps0 <= 0");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::invalid_argument("geometric_grid: ratio outside (0,1)");
  if (count < 2) throw std::invalid_argument("geometric_grid: count < 2");
  std::vector<double> grid(count);
  double eps = eps0;
  for (int i = 0; i < count; ++i) {
    grid[i] = eps;
    eps *= ratio;
  }
  return grid;
}

OrderEstimate fit_order(std::span<const std::pair<double, double>> samples,
                        double floor) {
  std::vector<std::pair<double, double>> used;  // (log eps, log |value|)
  double grid_min = std::numeric_limits<double>::infinity();
  double grid_max = 0.0;
  for (const auto& [eps, value] : samples) {
    if (!(eps > 0.0))
      throw std::invalid_argument("fit_order: non-positive epsilon");
    grid_min = std::min(grid_min, eps);
    grid_max = std::max(grid_max, eps);
    const double a = std::abs(value);
    if (a > floor && std::isfinite(a))
      used.emplace_back(std::log(eps), std::log(a));
  }

  OrderEstimate est;
  est.n_points_used = static_cast<int>(used.size());
  if (used.size() < 2) {
    est.saturated = true;
    est.exponent = std::numeric_limits<double>::infinity();
    est.window_min = samples.empty() ? 0.0 : grid_min;
    est.window_max = samples.empty() ? 0.0 : grid_max;
    return est;
  }

  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : used) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(used.size());
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) throw std::invalid_argument("fit_order: degenerate grid");
  est.exponent = (n * sxy - sx * sy) / denom;
  est.prefactor_log = (sy - est.exponent * sx) / n;

  double ss = 0.0;
  double wmin = std::numeric_limits<double>::infinity(), wmax = 0.0;
  for (const auto& [x, y] : used) {
    const double r = y - (est.prefactor_log + est.exponent * x);
    ss += r * r;
    wmin = std::min(wmin, std::exp(x));
    wmax = std::max(wmax, std::exp(x));
  }
  est.residual_rms = std::sqrt(ss / n);
  est.window_min = wmin;
  est.window_max = wmax;
  return est;
}

std::vector<double> default_eps_grid() {
  return geometric_grid(std::pow(2.0, -4), 0.5, 11);
}

}  // namespace gflab
