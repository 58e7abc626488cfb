#include "slope/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace slope {

namespace {

void check_common(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value))
    throw std::invalid_argument(std::string(name) + " must be positive and finite");
}

double max2(double a, double b) { return a > b ? a : b; }

}  // namespace

void BoundParams::validate() const {
  if (!q.is_inf() && q.value() < 2.0)
    throw std::invalid_argument("BoundParams: requires q in [2, inf]");
  if (s < 1) throw std::invalid_argument("BoundParams: requires s >= 1");
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::invalid_argument("BoundParams: gamma must lie in (0,1)");
  if (!(tau >= 0.0) || !(tau < 1.0 - gamma))
    throw std::invalid_argument("BoundParams: tau must lie in [0, 1-gamma)");
  if (!(delta0 > 0.0) || !(delta0 < 1.0))
    throw std::invalid_argument("BoundParams: delta0 must lie in (0,1)");
  check_common(re_constant, "BoundParams: re_constant");
}

double c_gamma_tau(const BoundParams& params, double lambda, double sigma, Index n) {
  params.validate();
  check_common(lambda, "c_gamma_tau: lambda");
  check_common(sigma, "c_gamma_tau: sigma");
  if (n < 1) throw std::invalid_argument("c_gamma_tau: n must be at least 1");
  const double t = params.gamma * lambda * std::sqrt(static_cast<double>(n)) /
                   (k4PlusSqrt2 * sigma);
  const double log_inv_delta_lambda = t * t;
  const double branch1 = std::log(1.0 / params.delta0) /
                         (static_cast<double>(params.s) * log_inv_delta_lambda);
  const double branch2 = std::pow(static_cast<double>(params.s), 1.0 - 2.0 * params.q.inv()) /
                         (params.re_constant * params.re_constant);
  const double pref = 1.0 + params.gamma + params.tau;
  return pref * pref * max2(branch1, branch2);
}

double c_prime_gamma_tau(const BoundParams& params, Index p) {
  params.validate();
  if (params.s > p) throw std::invalid_argument("c_prime_gamma_tau: requires s <= p");
  const double branch1 =
      std::log(1.0 / params.delta0) /
      (static_cast<double>(params.s) *
       std::log(2.0 * static_cast<double>(p) / static_cast<double>(params.s)));
  const double branch2 = 1.0 / (params.re_constant * params.re_constant);
  const double pref = 1.0 + params.gamma + params.tau;
  return pref * pref * max2(branch1, branch2);
}

namespace {

// The four right-hand sides share their coefficient structure between the
// two estimators: "unit" is lambda*s^(1/q) resp. Lambda_q(s), "quad" is
// lambda^2*s resp. Lambda_q(s)^2, and "approx" the matching best
// s-term error (scaled by lambda resp. Lambda^-1 where the display says so).
BoundReport assemble_report(const BoundParams& params, double constant, double quad, double unit,
                            double approx_pred_scale, double approx, double approx_lq_scale,
                            const std::string& re_label) {
  BoundReport rep;
  rep.constant = constant;
  rep.re_label = re_label;
  rep.rhs_prediction = constant * quad + 4.0 * approx_pred_scale * approx;
  rep.rhs_lq_sparse = constant / (1.0 + params.gamma) * unit;
  if (params.tau > 0.0) {
    rep.rhs_l1 = constant / (2.0 * params.tau) * quad +
                 (2.0 / params.tau) * approx_pred_scale * approx;
    const double slack = 1.0 - params.gamma - params.tau;
    const double coef_main = max2(2.0 / (1.0 + params.gamma), slack / (4.0 * params.tau));
    const double coef_approx = max2(1.0 / (1.0 + params.gamma), slack / params.tau);
    rep.rhs_lq_compressible =
        coef_main * constant * unit + coef_approx * approx_lq_scale * approx;
  }
  return rep;
}

}  // namespace

BoundReport lasso_bound_rhs(const BoundParams& params, double lambda, double sigma_s_l1,
                            double sigma, Index n, const std::string& re_label) {
  if (!(sigma_s_l1 >= 0.0))
    throw std::invalid_argument("lasso_bound_rhs: sigma_s_l1 must be non-negative");
  const double C = c_gamma_tau(params, lambda, sigma, n);
  const double s = static_cast<double>(params.s);
  // rhs_l1 divides the prediction slack by 2*tau*lambda, which turns
  // lambda^2*s into lambda*s and lambda*sigma_s into sigma_s.
  BoundReport rep = assemble_report(params, C, lambda * lambda * s,
                                    lambda * std::pow(s, params.q.inv()), lambda, sigma_s_l1,
                                    std::pow(s, params.q.inv() - 1.0), re_label);
  if (rep.rhs_l1) *rep.rhs_l1 /= lambda;
  return rep;
}

BoundReport slope_bound_rhs(const BoundParams& params, const WeightSchedule& w,
                            double sigma_s_star, Index p, const std::string& re_label) {
  if (!(sigma_s_star >= 0.0))
    throw std::invalid_argument("slope_bound_rhs: sigma_s_star must be non-negative");
  if (w.size() != p) throw std::invalid_argument("slope_bound_rhs: weight size mismatch");
  if (params.s > p) throw std::invalid_argument("slope_bound_rhs: requires s <= p");
  const double Cp = c_prime_gamma_tau(params, p);
  const double Lam = capital_lambda_q(w, params.s, params.q);
  if (!(Lam > 0.0)) throw std::invalid_argument("slope_bound_rhs: degenerate weights");
  return assemble_report(params, Cp, Lam * Lam, Lam, 1.0, sigma_s_star, 1.0 / Lam, re_label);
}

double interpolated_lq_bound(double rhs_l1, double rhs_l2, double q) {
  if (!(q >= 1.0) || !(q <= 2.0))
    throw std::invalid_argument("interpolated_lq_bound: requires q in [1,2]");
  if (!(rhs_l1 >= 0.0) || !(rhs_l2 >= 0.0))
    throw std::invalid_argument("interpolated_lq_bound: negative inputs");
  return std::pow(rhs_l1, 2.0 / q - 1.0) * std::pow(rhs_l2, 2.0 - 2.0 / q);
}

EventFunctionals event_functionals(const Vector& u, const ProblemInstance& inst, Index s,
                                   const NormOrder& q, double lambda, double gamma,
                                   double delta0) {
  const Index p = inst.p();
  const Index n = inst.n();
  if (u.size() != p) throw std::invalid_argument("event_functionals: dimension mismatch");
  if (s < 1 || s > p) throw std::invalid_argument("event_functionals: s out of range");
  if (!q.is_inf() && q.value() < 2.0)
    throw std::invalid_argument("event_functionals: requires q in [2, inf]");
  check_common(lambda, "event_functionals: lambda");
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::invalid_argument("event_functionals: gamma must lie in (0,1)");
  if (!(delta0 > 0.0) || !(delta0 < 1.0))
    throw std::invalid_argument("event_functionals: delta0 must lie in (0,1)");
  const double sigma = inst.sigma;
  check_common(sigma, "event_functionals: sigma");

  const Vector xi = inst.noise();
  const Vector us = rearrange_desc(u);
  const WeightSchedule shape = sqrt_log_weights(p);
  const double root_n = std::sqrt(static_cast<double>(n));
  const double scale = k4PlusSqrt2 * sigma / root_n;

  double head_full = 0.0, tail_weighted = 0.0, tail_plain = 0.0;
  for (Index j = 0; j < p; ++j) {
    head_full += shape[j] * us[j];
    if (j >= s) {
      tail_weighted += shape[j] * us[j];
      tail_plain += us[j];
    }
  }
  const double uq = lq_norm(u, q);

  EventFunctionals ev;
  ev.H = scale * head_full;
  ev.G = k4PlusSqrt2 * sigma *
         std::sqrt(std::log(1.0 / delta0) / static_cast<double>(n)) * (inst.X * u).norm() /
         root_n;
  ev.H_tilde = scale * (uq * capital_lambda_q(shape, s, q) + tail_weighted);
  ev.F = lambda * gamma *
         (std::pow(static_cast<double>(s), q.one_minus_inv()) * uq + tail_plain);
  ev.lhs = xi.dot(inst.X * u) / static_cast<double>(n);
  return ev;
}

double minimax_rate(Index n, Index p, Index s, const NormOrder& q, double sigma) {
  if (n < 1) throw std::invalid_argument("minimax_rate: n must be at least 1");
  if (s < 1 || s > p) throw std::invalid_argument("minimax_rate: requires 1 <= s <= p");
  check_common(sigma, "minimax_rate: sigma");
  return sigma * std::pow(static_cast<double>(s), q.inv()) *
         std::sqrt(std::log(std::numbers::e * static_cast<double>(p) / static_cast<double>(s)) /
                   static_cast<double>(n));
}

bool minimax_regime_ok(Index s, Index p) { return p >= 2 && s >= 1 && 2 * s <= p; }

}  // namespace slope
