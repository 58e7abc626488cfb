#pragma once

#include <optional>
#include <string>

#include "slope/solvers.hpp"
#include "slope/weights.hpp"

namespace slope {

// Common knobs of the oracle bounds.  c0 is always derived from gamma and
// tau, never stored, so the cone opening and the constants cannot drift
// apart.
struct BoundParams {
  NormOrder q = NormOrder::finite(2.0);
  Index s = 1;
  double gamma = 0.5;
  double tau = 0.25;
  double delta0 = 0.1;
  double re_constant = 1.0;  // plug-in for theta_q or nu_q

  double c0() const { return (1.0 + gamma + tau) / (1.0 - gamma - tau); }
  void validate() const;
};

// (1+gamma+tau)^2 * max(log(1/delta0)/(s*log(1/delta(lambda))), s^(1-2/q)/theta^2).
// The first branch is evaluated from the closed form of log(1/delta(lambda)),
// so it survives lambda large enough to underflow delta(lambda).
double c_gamma_tau(const BoundParams& params, double lambda, double sigma, Index n);

// (1+gamma+tau)^2 * max(log(1/delta0)/(s*log(2p/s)), 1/nu^2).
double c_prime_gamma_tau(const BoundParams& params, Index p);

struct BoundReport {
  double constant = 0.0;           // the C factor used throughout
  double rhs_prediction = 0.0;     // additive slack of the prediction bound
  std::optional<double> rhs_l1;    // l1 error (lasso) or sorted-norm error (slope); tau > 0
  double rhs_lq_sparse = 0.0;      // lq error for exactly sparse targets
  std::optional<double> rhs_lq_compressible;  // lq error with an approximation term; tau > 0
  std::string re_label = "estimated";         // "estimated" | "exact"
};

// Lasso right-hand sides at level lambda with l1 approximation error
// sigma_s_l1 of the target.  tau = 0 drops the two bounds that divide by it.
BoundReport lasso_bound_rhs(const BoundParams& params, double lambda, double sigma_s_l1,
                            double sigma, Index n, const std::string& re_label = "estimated");

// Slope right-hand sides under the given weights with sorted-norm
// approximation error sigma_s_star of the target.
BoundReport slope_bound_rhs(const BoundParams& params, const WeightSchedule& w,
                            double sigma_s_star, Index p,
                            const std::string& re_label = "estimated");

// ||u||_q <= ||u||_1^(2/q-1) ||u||_2^(2-2/q) for q in [1,2], applied to
// the right-hand sides; exact passthrough at the endpoints.
double interpolated_lq_bound(double rhs_l1, double rhs_l2, double q);

struct EventFunctionals {
  double H = 0.0;        // weighted rearrangement functional
  double G = 0.0;        // prediction-norm functional at confidence delta0
  double H_tilde = 0.0;  // head/tail split of H, H <= H_tilde
  double F = 0.0;        // lq relaxation of H_tilde at level lambda, H_tilde <= F when
                         // lambda clears the tuning threshold
  double lhs = 0.0;      // (1/n) xi^T X u
};

// All functionals at the error direction u; needs the noiseless mean to
// recover xi.  The chain H <= H_tilde holds unconditionally, H_tilde <= F
// under the lambda threshold.
EventFunctionals event_functionals(const Vector& u, const ProblemInstance& inst, Index s,
                                   const NormOrder& q, double lambda, double gamma,
                                   double delta0);

// sigma * s^(1/q) * sqrt(log(ep/s)/n): the scaling no estimator can beat
// uniformly over s-sparse targets.
double minimax_rate(Index n, Index p, Index s, const NormOrder& q, double sigma);

// The lower-bound regime needs p >= 2 and s <= p/2.
bool minimax_regime_ok(Index s, Index p);

}  // namespace slope
