#pragma once

#include <optional>

#include "slope/norms.hpp"
#include "slope/prox.hpp"
#include "slope/types.hpp"

namespace slope {

struct ProblemInstance {
  Matrix X;
  Vector y;
  double sigma = 1.0;
  std::optional<Vector> beta_star;  // ground truth, when known
  std::optional<Vector> f;          // noiseless mean; X*beta_star when omitted but beta_star given
  bool columns_normalized = false;  // max_j ||X e_j||_2 / sqrt(n) <= 1 (small slack)

  Index n() const { return X.rows(); }
  Index p() const { return X.cols(); }

  // y - f; requires the noiseless mean to be known.
  Vector noise() const;

  static ProblemInstance make(Matrix X, Vector y, double sigma,
                              std::optional<Vector> beta_star = std::nullopt,
                              std::optional<Vector> f = std::nullopt);
};

struct SolverConfig {
  int max_iter = 50000;
  double tol = 1e-9;
  std::optional<double> step;  // overrides the 1/L default
};

struct FitResult {
  Vector beta_hat;
  double objective;  // recomputed from the final iterate via the residual form
  int iterations = 0;
  bool converged = false;
  double stationarity_residual = 0.0;  // l2 norm of the fixed-point gap
};

// (1/n)||y - X beta||_2^2 + 2*lambda*||beta||_1
double lasso_objective(const ProblemInstance& inst, double lambda, const Vector& beta);

// (1/n)||y - X beta||_2^2 + 2*||beta||_* under the given weights
double slope_objective(const ProblemInstance& inst, const WeightSchedule& w, const Vector& beta);

FitResult lasso_fit(const ProblemInstance& inst, double lambda, const SolverConfig& cfg = {});
FitResult slope_fit(const ProblemInstance& inst, const WeightSchedule& w,
                    const SolverConfig& cfg = {});

// Largest singular value of X by power iteration on the smaller Gram side.
double operator_norm(const Matrix& X);

// Max over coordinates of the first-order optimality gap at beta:
// |g_j| - lambda off the support, |g_j - lambda*sign(beta_j)| on it,
// with g = (1/n) X^T (y - X beta).
double lasso_kkt_violation(const ProblemInstance& inst, double lambda, const Vector& beta);

}  // namespace slope
