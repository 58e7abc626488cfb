#include "slope/weights.hpp"

#include <cmath>
#include <stdexcept>

namespace slope {

namespace {

void check_gamma(double gamma) {
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::invalid_argument("gamma must lie in (0,1)");
}

void check_sigma_n(double sigma, Index n) {
  if (!(sigma > 0.0)) throw std::invalid_argument("sigma must be positive");
  if (n < 1) throw std::invalid_argument("n must be at least 1");
}

}  // namespace

void SlopeWeightConfig::validate() const {
  if (p < 1) throw std::invalid_argument("SlopeWeightConfig: p must be at least 1");
  check_sigma_n(sigma, n);
  if (!(A > 0.0)) throw std::invalid_argument("SlopeWeightConfig: A must be positive");
}

WeightSchedule slope_weights(const SlopeWeightConfig& cfg) {
  cfg.validate();
  Vector w(cfg.p);
  const double scale = cfg.A * cfg.sigma / std::sqrt(static_cast<double>(cfg.n));
  for (Index j = 1; j <= cfg.p; ++j)
    w[j - 1] = scale * std::sqrt(std::log(2.0 * static_cast<double>(cfg.p) / j));
  return WeightSchedule(std::move(w));
}

WeightSchedule sqrt_log_weights(Index p) {
  if (p < 1) throw std::invalid_argument("sqrt_log_weights: p must be at least 1");
  Vector w(p);
  for (Index j = 1; j <= p; ++j)
    w[j - 1] = std::sqrt(std::log(2.0 * static_cast<double>(p) / static_cast<double>(j)));
  return WeightSchedule(std::move(w));
}

double lasso_lambda_min(double gamma, double sigma, Index n, Index p, Index s) {
  check_gamma(gamma);
  check_sigma_n(sigma, n);
  if (s < 1 || s > p) throw std::invalid_argument("lasso_lambda_min: requires 1 <= s <= p");
  const double ratio = 2.0 * std::numbers::e * static_cast<double>(p) / static_cast<double>(s);
  return (k4PlusSqrt2 / gamma) * sigma * std::sqrt(std::log(ratio) / static_cast<double>(n));
}

double delta_of_lambda(double lambda, double gamma, double sigma, Index n) {
  check_gamma(gamma);
  check_sigma_n(sigma, n);
  if (!(lambda > 0.0)) throw std::invalid_argument("delta_of_lambda: lambda must be positive");
  const double t = gamma * lambda * std::sqrt(static_cast<double>(n)) / (k4PlusSqrt2 * sigma);
  return std::exp(-t * t);
}

double lambda_of_delta(double delta, double gamma, double sigma, Index n) {
  check_gamma(gamma);
  check_sigma_n(sigma, n);
  if (!(delta > 0.0) || !(delta < 1.0))
    throw std::invalid_argument("lambda_of_delta: delta must lie in (0,1)");
  return (k4PlusSqrt2 * sigma / gamma) *
         std::sqrt(std::log(1.0 / delta) / static_cast<double>(n));
}

bool lambda_admissible(double lambda, double gamma, double sigma, Index n, Index p, Index s) {
  return lambda >= lasso_lambda_min(gamma, sigma, n, p, s);
}

double capital_lambda_q(const WeightSchedule& w, Index s, const NormOrder& q) {
  if (s < 1 || s > w.size())
    throw std::invalid_argument("capital_lambda_q: requires 1 <= s <= p");
  if (!q.is_inf() && q.value() < 2.0)
    throw std::invalid_argument("capital_lambda_q: requires q >= 2");
  return lq_norm(w.values().head(s), NormOrder::finite(q.conjugate()));
}

LassoTuning make_lasso_tuning(double lambda, double gamma, double sigma, Index n) {
  LassoTuning t;
  t.lambda = lambda;
  t.gamma = gamma;
  t.delta_lambda = delta_of_lambda(lambda, gamma, sigma, n);
  return t;
}

}  // namespace slope
