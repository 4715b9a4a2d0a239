#ifndef GFLAB_COUNTEREXAMPLES_HPP
#define GFLAB_COUNTEREXAMPLES_HPP

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gflab/numerics.hpp"
#include "gflab/testing.hpp"

namespace gflab {

// The helper functions of the two counterexample functionals.
double g_fun(double x);                   // x / (1 + x^2)
double e_fun(double x);                   // exp(-1/x) for x > 0, else 0
double gamma_k(int k);                    // k + 1/k, k >= 1

// Two realizations of the cutoff sigma (even, 0 <= sigma <= 1, == 1 on
// |x| <= 1/2, == 0 on |x| >= 3/2). Experiments must not depend on the
// transition shape.
enum class SigmaKind { partition, smoothstep };
double bump_sigma(double x);        // e-function partition of unity (smooth)
double smoothstep_sigma(double x);  // clamped quintic
double sigma_fun(SigmaKind kind, double x);

double h_k(int k, double x, SigmaKind sigma = SigmaKind::partition);

// v(phi) = <phi|phi>^(1/2) <v_(1/2), phi>; scale-invariant in one dimension.
double v_fun(const TestFunction& phi);

struct SeriesEvalConfig {
  double tail_tol = 1e-30;
  int k_max_hard = 60;
  bool record_terms = false;
  int k_force = 0;  // tests only: when > 0, sum exactly this many terms
};

struct SeriesValue {
  double value = 0.0;
  int k_used = 0;
  double tail_bound = 0.0;
  std::vector<double> terms;  // filled when record_terms
};

// P(phi) = sum_k (1/k!) g(<phi|phi>^gamma_k e(v(phi))) <phi|phi>^gamma_k <v_k, phi>.
// Partial sum with a certified tail bound; exact zero when v(phi) <= 0.
// Throws TruncationError if k_max_hard is reached before tail_tol.
SeriesValue eval_P(const TestFunction& phi, const SeriesEvalConfig& cfg = {});

// Q(phi) = sum_k (1/k!) h_k(<phi|phi>^(3/2) <v_1/2, phi>) <phi|phi>^gamma_k <v_k, phi>.
// Exact zero when the half moment vanishes.
SeriesValue eval_Q(const TestFunction& phi, const SeriesEvalConfig& cfg = {},
                   SigmaKind sigma = SigmaKind::partition);

// P and Q as (x-independent) representatives.
Representative representative_P(const SeriesEvalConfig& cfg = {});
Representative representative_Q(const SeriesEvalConfig& cfg = {},
                                SigmaKind sigma = SigmaKind::partition);

enum class Functional { P, Q };

struct DecayRow {
  int q = 0;
  double eps = 0.0;
  double value = 0.0;
  int k_used = 0;
  double tail_bound = 0.0;
};

struct DecayTable {
  Functional functional = Functional::P;
  SigmaKind sigma = SigmaKind::partition;
  std::map<int, OrderEstimate> orders;
  std::vector<DecayRow> rows;
  std::map<int, double> half_moments;  // of the constructed phi_q
};

// Fixed-mollifier decay: for each q builds an exact-A_q mollifier with a unit
// (q+1)-st moment (so the first surviving series term is k = q+1) and a
// positive half moment, then fits the order of |P(S_eps phi)| over the grid.
// The half-moment repair direction is picked by a seeded search among even
// zero-mass candidates that leave the pinned moments untouched.
DecayTable experiment_decay(Functional which, std::span<const int> q_list,
                            std::span<const double> eps_grid, double radius,
                            const SeriesEvalConfig& cfg = {},
                            SigmaKind sigma = SigmaKind::partition,
                            ExecMode exec = default_exec_mode(),
                            unsigned long long seed = 1);

DecayTable experiment_P_decay(std::span<const int> q_list,
                              std::span<const double> eps_grid, double radius,
                              const SeriesEvalConfig& cfg = {},
                              ExecMode exec = default_exec_mode(),
                              unsigned long long seed = 1);

struct WitnessMember {
  double t = 0.0;
  std::optional<OrderEstimate> order;  // absent: asymptotic regime not reached
  std::string note;
};

struct WitnessRow {
  double t = 0.0;
  double eps = 0.0;
  double value = 0.0;
  int k_used = 0;
  double tail_bound = 0.0;
};

struct WitnessReport {
  int q = 0;
  std::vector<WitnessMember> per_t;
  OrderEstimate sup_order;
  std::vector<std::pair<double, double>> sup_curve;
  std::vector<WitnessRow> rows;
  double min_per_t_order = 0.0;
  double gap = 0.0;  // min per-t order minus sup order
  bool exhibit = false;
  std::string note;
  std::string family_id;
};

// Non-uniformity exhibit: a bounded family phi_t = phi_base + t * eta with
// half_moment(phi_t) -> 0+ as t -> 0+. Per-t decay orders stay near q+1 while
// the sup over the family decays at a slightly negative order. Exploratory.
WitnessReport experiment_witness_search(int q, std::span<const double> t_grid,
                                        std::span<const double> eps_grid,
                                        const SeriesEvalConfig& cfg = {},
                                        ExecMode exec = default_exec_mode());

std::vector<double> witness_default_t_grid();
std::vector<double> witness_default_eps_grid();

// Default grid for the decay experiments (the standard sweep grid).
std::vector<double> decay_default_eps_grid();

}  // namespace gflab

#endif
