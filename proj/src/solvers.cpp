#include "slope/solvers.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <utility>

#include "slope/rng.hpp"

namespace slope {

namespace {

bool all_finite(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j)
    for (Index i = 0; i < m.rows(); ++i)
      if (!std::isfinite(m(i, j))) return false;
  return true;
}

// Quadratic part (1/n)||y - X beta||^2 with an optional Gram precompute;
// both paths agree to rounding, the Gram one trades memory for matvecs
// that scale with p instead of n.
class Quadratic {
 public:
  Quadratic(const Matrix& X, const Vector& y) : X_(X), y_(y), n_(X.rows()) {
    use_gram_ = X.rows() >= X.cols() && X.cols() <= 4096;
    if (use_gram_) {
      G_ = X.transpose() * X;
      Xty_ = X.transpose() * y;
      yty_ = y.squaredNorm();
    }
  }

  double value(const Vector& beta) const {
    if (use_gram_)
      return (beta.dot(G_ * beta) - 2.0 * beta.dot(Xty_) + yty_) / static_cast<double>(n_);
    return (X_ * beta - y_).squaredNorm() / static_cast<double>(n_);
  }

  Vector grad(const Vector& beta) const {
    if (use_gram_) return (2.0 / static_cast<double>(n_)) * (G_ * beta - Xty_);
    return (2.0 / static_cast<double>(n_)) * (X_.transpose() * (X_ * beta - y_));
  }

 private:
  const Matrix& X_;
  const Vector& y_;
  Index n_;
  bool use_gram_;
  Matrix G_;
  Vector Xty_;
  double yty_ = 0.0;
};

using ProxFn = std::function<Vector(const Vector&, double stepsize)>;
using PenaltyFn = std::function<double(const Vector&)>;

// Accelerated proximal gradient with function-value restart.  The prox
// callback receives the step so it can scale its weights by 2*step (the
// penalty enters the objective with a factor 2).
FitResult fit_proximal(const ProblemInstance& inst, const SolverConfig& cfg, const ProxFn& prox,
                       const PenaltyFn& penalty) {
  if (cfg.max_iter < 1) throw std::invalid_argument("SolverConfig: max_iter must be positive");
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("SolverConfig: tol must be positive");

  const Quadratic quad(inst.X, inst.y);
  double step;
  if (cfg.step) {
    if (!(*cfg.step > 0.0)) throw std::invalid_argument("SolverConfig: step must be positive");
    step = *cfg.step;
  } else {
    const double op = operator_norm(inst.X);
    const double L = 2.0 * op * op / static_cast<double>(inst.n());
    step = L > 0.0 ? 1.0 / L : 1.0;
  }

  Vector x = Vector::Zero(inst.p());
  Vector z = x;
  double t = 1.0;
  double obj = quad.value(x) + penalty(x);

  FitResult res;
  for (int iter = 1; iter <= cfg.max_iter; ++iter) {
    const Vector x_new = prox(z - step * quad.grad(z), step);
    const double t_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double obj_new = quad.value(x_new) + penalty(x_new);
    if (obj_new > obj) {
      // Momentum overshot; restart from the last accepted point.
      z = x_new;
      t = 1.0;
    } else {
      z = x_new + ((t - 1.0) / t_new) * (x_new - x);
      t = t_new;
    }

    const Vector fixed_point_gap = x_new - prox(x_new - step * quad.grad(x_new), step);
    const double residual = fixed_point_gap.norm();
    const bool value_settled = std::abs(obj_new - obj) <= cfg.tol * std::max(1.0, std::abs(obj_new));

    x = x_new;
    obj = obj_new;
    res.iterations = iter;
    res.stationarity_residual = residual;
    if (residual <= cfg.tol && value_settled) {
      res.converged = true;
      break;
    }
  }
  res.beta_hat = std::move(x);
  return res;
}

}  // namespace

Vector ProblemInstance::noise() const {
  if (!f) throw std::invalid_argument("ProblemInstance: noiseless mean unknown");
  return y - *f;
}

ProblemInstance ProblemInstance::make(Matrix X, Vector y, double sigma,
                                      std::optional<Vector> beta_star, std::optional<Vector> f) {
  if (X.rows() < 1 || X.cols() < 1)
    throw std::invalid_argument("ProblemInstance: X must have positive dimensions");
  if (y.size() != X.rows()) throw std::invalid_argument("ProblemInstance: y/X dimension mismatch");
  if (!all_finite(X) || !all_finite(y))
    throw std::invalid_argument("ProblemInstance: non-finite entries");
  if (!(sigma >= 0.0)) throw std::invalid_argument("ProblemInstance: sigma must be non-negative");
  if (beta_star && beta_star->size() != X.cols())
    throw std::invalid_argument("ProblemInstance: beta_star dimension mismatch");
  if (f && f->size() != X.rows())
    throw std::invalid_argument("ProblemInstance: f dimension mismatch");

  ProblemInstance inst;
  inst.sigma = sigma;
  if (!f && beta_star) f = X * (*beta_star);
  inst.f = std::move(f);
  inst.beta_star = std::move(beta_star);
  const double max_col = X.colwise().norm().maxCoeff();
  inst.columns_normalized = max_col <= std::sqrt(static_cast<double>(X.rows())) * (1.0 + 1e-9);
  inst.X = std::move(X);
  inst.y = std::move(y);
  return inst;
}

double lasso_objective(const ProblemInstance& inst, double lambda, const Vector& beta) {
  if (!(lambda >= 0.0)) throw std::invalid_argument("lasso_objective: negative lambda");
  if (beta.size() != inst.p()) throw std::invalid_argument("lasso_objective: dimension mismatch");
  return (inst.y - inst.X * beta).squaredNorm() / static_cast<double>(inst.n()) +
         2.0 * lambda * beta.cwiseAbs().sum();
}

double slope_objective(const ProblemInstance& inst, const WeightSchedule& w, const Vector& beta) {
  if (beta.size() != inst.p()) throw std::invalid_argument("slope_objective: dimension mismatch");
  return (inst.y - inst.X * beta).squaredNorm() / static_cast<double>(inst.n()) +
         2.0 * sorted_l1_norm(beta, w);
}

FitResult lasso_fit(const ProblemInstance& inst, double lambda, const SolverConfig& cfg) {
  if (!(lambda >= 0.0) || !std::isfinite(lambda))
    throw std::invalid_argument("lasso_fit: lambda must be finite and non-negative");
  FitResult res = fit_proximal(
      inst, cfg,
      [lambda](const Vector& v, double step) { return soft_threshold(v, 2.0 * step * lambda); },
      [lambda](const Vector& b) { return 2.0 * lambda * b.cwiseAbs().sum(); });
  res.objective = lasso_objective(inst, lambda, res.beta_hat);
  return res;
}

FitResult slope_fit(const ProblemInstance& inst, const WeightSchedule& w,
                    const SolverConfig& cfg) {
  if (w.size() != inst.p()) throw std::invalid_argument("slope_fit: weight dimension mismatch");
  FitResult res = fit_proximal(
      inst, cfg,
      [&w](const Vector& v, double step) {
        return prox_sorted_l1(v, WeightSchedule(2.0 * step * w.values()));
      },
      [&w](const Vector& b) { return 2.0 * sorted_l1_norm(b, w); });
  res.objective = slope_objective(inst, w, res.beta_hat);
  return res;
}

double operator_norm(const Matrix& X) {
  const Index n = X.rows(), p = X.cols();
  if (n == 0 || p == 0) return 0.0;
  const bool tall = n >= p;
  const Matrix B = tall ? Matrix(X.transpose() * X) : Matrix(X * X.transpose());
  const Index d = B.rows();

  auto eng = make_engine(0x5eedbeefcafef00dull, 0);
  Vector v = gaussian_vector(d, eng);
  if (v.norm() == 0.0) v = Vector::Ones(d);
  v.normalize();
  double eig = 0.0;
  for (int it = 0; it < 100; ++it) {
    Vector Bv = B * v;
    const double norm = Bv.norm();
    if (norm == 0.0) return 0.0;
    const double eig_new = v.dot(Bv);
    v = Bv / norm;
    if (std::abs(eig_new - eig) <= 1e-10 * std::max(1.0, std::abs(eig_new))) {
      eig = eig_new;
      break;
    }
    eig = eig_new;
  }
  return std::sqrt(std::max(eig, 0.0));
}

double lasso_kkt_violation(const ProblemInstance& inst, double lambda, const Vector& beta) {
  if (beta.size() != inst.p())
    throw std::invalid_argument("lasso_kkt_violation: dimension mismatch");
  const Vector g = inst.X.transpose() * (inst.y - inst.X * beta) / static_cast<double>(inst.n());
  double worst = 0.0;
  for (Index j = 0; j < beta.size(); ++j) {
    const double v = beta[j] == 0.0 ? std::max(0.0, std::abs(g[j]) - lambda)
                                    : std::abs(g[j] - (beta[j] > 0.0 ? lambda : -lambda));
    worst = std::max(worst, v);
  }
  return worst;
}

}  // namespace slope
