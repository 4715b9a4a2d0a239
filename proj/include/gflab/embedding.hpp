#ifndef GFLAB_EMBEDDING_HPP
#define GFLAB_EMBEDDING_HPP

#include <functional>
#include <string>
#include <vector>

#include "gflab/testing.hpp"

namespace gflab {

// A smooth (or at worst piecewise-smooth) function of one variable together
// with its derivatives. `kinks` lists points where smoothness fails; the
// convolution quadrature splits panels there.
struct SmoothFn {
  std::string name;
  std::function<double(double)> f;
  std::function<double(double, int)> deriv;  // m-th derivative, m >= 0
  std::vector<double> kinks;
};

// Registry used by the CLI: sin, cos, exp, x, x2, x3, one, abs.
SmoothFn named_smooth(const std::string& name);

// sigma embedding: R(phi, x) = f(x), mollifier ignored.
Representative const_embed(const SmoothFn& f, Interval domain = {});

// iota embedding in the C-formalism: R(phi, x) = integral f(x + xi) phi(xi).
Representative embed_smooth(const SmoothFn& f, Interval domain = {},
                            int panels = 64);

// iota(delta): R(phi, x) = phi(-x).
Representative embed_delta();

// iota(v_k): R(phi, x) = integral (x + xi)^k phi(xi).
Representative embed_vk(int k);

// The difference iota(f) - sigma(f), evaluated in a single quadrature of
// (f(x + xi) - f(x)) phi(xi) so that rounding scales with the defect instead
// of with f. Coincides with iota(f) - f(x) * mass(phi).
Representative iota_sigma_defect(const SmoothFn& f, Interval domain = {},
                                 int panels = 64);

Representative rep_difference(const Representative& a, const Representative& b);
Representative rep_product(const Representative& a, const Representative& b);
Representative rep_zero();

// Defaults tuned for embedding-defect decay: the window stops before the
// defect drops under the moment-residual floor of the constructed
// mollifiers, and the fit floor drops saturated (polynomial-exact) cases.
SweepConfig embedding_sweep_config();
std::vector<double> embedding_eps_grid();

// Fitted order of sup over K of |iota(f) - sigma(f)| along scaled marked A_q
// mollifiers; q+1 for analytic non-polynomial f, saturated (exact zero) for
// polynomials of degree <= q.
OrderEstimate check_iota_sigma(const SmoothFn& f, int q,
                               std::span<const double> eps_grid, Interval K,
                               const SweepConfig& cfg = embedding_sweep_config());

// Fitted order of sup over K of |iota(f1) iota(f2) - iota(f1 f2)| along the
// same mollifiers; the three convolutions are combined through their defects
// so rounding again scales with the defect.
OrderEstimate check_product(const SmoothFn& f1, const SmoothFn& f2, int q,
                            std::span<const double> eps_grid, Interval K,
                            const SweepConfig& cfg = embedding_sweep_config());

}  // namespace gflab

#endif
