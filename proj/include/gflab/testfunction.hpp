#ifndef GFLAB_TESTFUNCTION_HPP
#define GFLAB_TESTFUNCTION_HPP

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gflab/classification.hpp"

namespace gflab {

// One polynomial-times-bump term. With u = xi / scale and r = u / base_radius,
//   value(xi) = amplitude * poly(u) * exp(-1 / (1 - r^2))   for |r| < 1
// and 0 outside. The (scale, amplitude) pair is the affine rescaling record;
// rescaling by eps then eps' composes into a single record with
// scale = eps * eps'.
struct BumpAtom {
  double base_radius = 1.0;
  std::vector<double> coeffs{1.0};  // c_0..c_d in u
  double scale = 1.0;
  double amplitude = 1.0;

  double support_radius() const { return base_radius * scale; }
  double value(double xi) const;
  double value_d1(double xi) const;
  double value_d2(double xi) const;
};

// A smooth compactly supported function on the line, stored symbolically as a
// finite sum of BumpAtoms. Smoothness is exact by construction; evaluation,
// scaling and first/second derivatives are analytic.
class TestFunction {
 public:
  TestFunction() = default;  // the zero function
  explicit TestFunction(BumpAtom atom);
  explicit TestFunction(std::vector<BumpAtom> atoms);

  double operator()(double xi) const;

  // Analytic for order <= 2, central differences of the analytic second
  // derivative above that.
  double derivative(double xi, int order) const;

  double support_radius() const;
  bool is_zero() const { return atoms_.empty(); }
  const std::vector<BumpAtom>& atoms() const { return atoms_; }

 private:
  std::vector<BumpAtom> atoms_;
};

// The base bump exp(-1/(1-(xi/a)^2)), supported on [-a, a]. Not normalized.
TestFunction make_bump(double radius);

// Mollifier with unit mass and vanishing moments 1..q, built as
// (sum c_j xi^j) * bump by solving the Hankel moment system M c = e_0,
// M_{jk} = integral of xi^{j+k} * bump. The pivoted solve is polished by
// iterative refinement against quadrature-measured moments.
TestFunction make_Aq(int q, double radius = 1.0);

// Polynomial-times-bump with moments m_j = delta_{jk} for 0 <= j <= upto
// (same Hankel system, right-hand side e_k). For k >= 1 this is a zero-mass
// direction; k = upto = 0 reproduces the normalized bump.
TestFunction make_moment_selector(int k, int upto, double radius = 1.0);

// As make_Aq but additionally pins m_{q+1} = marker and
// m_{q+2} = m_{q+3} = 0, so that embedding defects have a clean leading
// eps^{q+1} term with the next correction three orders away.
TestFunction make_Aq_marked(int q, double radius = 1.0, double marker = 1.0);

// Construction diagnostics for the moment-system solves.
struct MollifierBuild {
  TestFunction fn;
  double condition_estimate = 0.0;  // 1-norm condition of the Hankel matrix
  int refinement_steps = 0;
  double max_residual = 0.0;  // max moment residual after refinement
};
MollifierBuild build_with_moments(std::span<const std::pair<int, double>> pinned,
                                  int upto, double radius);

// S_eps: xi -> eps^{-1} phi(xi / eps). Preserves mass; support scales by eps.
TestFunction scale(const TestFunction& phi, double eps);

// integral of xi^k phi(xi)
double moment(const TestFunction& phi, int k);
// integral of |xi|^{1/2} phi(xi); each half-axis is integrated under
// xi = u^2 so the quadrature never sees the square-root kink.
double half_moment(const TestFunction& phi);
// integral of phi^2
double l2_inner(const TestFunction& phi);

// Independent higher-resolution quadrature (different panel/node counts),
// used by verify_moments so certification does not share the constructor's
// quadrature.
double moment_ref(const TestFunction& phi, int k);

// Moments 0..kmax in one call.
std::vector<double> moments_upto(const TestFunction& phi, int kmax);

// Quadrature upper bound for integral of |phi| (inflated by 1%), used in
// series tail bounds.
double abs_mass_bound(const TestFunction& phi);

struct MomentProfile {
  enum class Kind { exact_aq, zero_mass, unconstrained };
  Kind kind = Kind::unconstrained;
  int q = 0;

  static MomentProfile exact(int q) { return {Kind::exact_aq, q}; }
  static MomentProfile zero_mass(int q = 0) { return {Kind::zero_mass, q}; }
};

struct MomentReport {
  bool pass = true;
  double tol = 0.0;
  std::vector<std::pair<int, double>> residuals;  // (moment index, residual)
};

MomentReport verify_moments(const TestFunction& phi, const MomentProfile& profile,
                            double tol);

// Pointwise linear combination; atoms sharing (radius, scale) coalesce.
TestFunction linear_combine(
    std::span<const std::pair<double, TestFunction>> terms);

// Finite certified stand-in for a bounded subset of D(R): the bounds are
// sampled sup-norms of derivatives 0..derivative_bound_order.
struct BoundedFamily {
  std::string id;
  std::vector<TestFunction> members;
  double common_radius = 0.0;
  int derivative_bound_order = 0;
  std::vector<double> certified_bounds;
};

BoundedFamily certify_family(std::string id, std::vector<TestFunction> members,
                             int derivative_bound_order = 2);
bool recheck_family(const BoundedFamily& family);

// An eps- (and optionally x-) parametrized family of test functions carrying
// its type tag.
struct TestObjectPath {
  TypeTag tag;
  int q = 0;
  std::function<TestFunction(double eps, double x)> generator;
};

// phi(eps, x) = base + eps^q * rho(x) * direction. Requires unit-mass base
// and zero-mass direction; tag is [e:A] without modulation, [ex:Aginf] with.
TestObjectPath make_asymptotic_path(int q, const TestFunction& base,
                                    const TestFunction& direction,
                                    std::function<double(double)> x_modulation = {});

}  // namespace gflab

#endif
