#pragma once

#include <numbers>

#include "slope/norms.hpp"
#include "slope/qnorm.hpp"

namespace slope {

inline constexpr double k4PlusSqrt2 = 4.0 + std::numbers::sqrt2;

// Smallest multiplier for which the sorted-weight tail argument goes
// through with a strict margin; callers may pass anything larger.
inline constexpr double default_weight_multiplier() { return 2.0 * k4PlusSqrt2 + 1e-9; }

struct SlopeWeightConfig {
  Index p = 0;
  Index n = 0;
  double sigma = 1.0;
  double A = default_weight_multiplier();

  void validate() const;
};

// lambda_j = A * sigma * sqrt(log(2p/j)/n), j = 1..p; strictly decreasing.
WeightSchedule slope_weights(const SlopeWeightConfig& cfg);

// The scale-free shape sqrt(log(2p/j)); slope_weights equals this times
// A*sigma/sqrt(n).
WeightSchedule sqrt_log_weights(Index p);

// ((4+sqrt2)/gamma) * sigma * sqrt(log(2ep/s)/n): the smallest level at
// which the tuning confidence matches the sparsity target.
double lasso_lambda_min(double gamma, double sigma, Index n, Index p, Index s);

// Confidence level attached to a level lambda: exp(-(gamma*lambda*sqrt(n)/((4+sqrt2)*sigma))^2).
double delta_of_lambda(double lambda, double gamma, double sigma, Index n);

// Inverse of delta_of_lambda on (0,1); round-trips to machine precision.
double lambda_of_delta(double delta, double gamma, double sigma, Index n);

// lambda >= lasso_lambda_min(gamma, sigma, n, p, s), i.e. delta(lambda) <= s/(2ep).
bool lambda_admissible(double lambda, double gamma, double sigma, Index n, Index p, Index s);

// l_{q/(q-1)} norm of the first s weights; defined for q in [2, inf].
// Non-decreasing in s; at q = inf it is the plain partial sum.
double capital_lambda_q(const WeightSchedule& w, Index s, const NormOrder& q);

struct LassoTuning {
  double lambda;
  double gamma;
  double delta_lambda;  // always delta_of_lambda(lambda, gamma, sigma, n)
};

LassoTuning make_lasso_tuning(double lambda, double gamma, double sigma, Index n);

}  // namespace slope
