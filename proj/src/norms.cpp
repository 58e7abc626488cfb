#include "slope/norms.hpp"

#include <algorithm>
#include <cmath>

namespace slope {

WeightSchedule::WeightSchedule(Vector w) : w_(std::move(w)) {
  if (w_.size() == 0) throw std::invalid_argument("WeightSchedule: empty");
  for (Index j = 0; j < w_.size(); ++j) {
    if (!std::isfinite(w_[j]) || w_[j] < 0.0)
      throw std::invalid_argument("WeightSchedule: entries must be finite and non-negative");
    if (j > 0 && w_[j] > w_[j - 1])
      throw std::invalid_argument("WeightSchedule: entries must be non-increasing");
  }
}

Vector rearrange_desc(const Vector& v) {
  if (v.size() == 0) throw std::invalid_argument("rearrange_desc: empty vector");
  Vector a = v.cwiseAbs();
  std::sort(a.data(), a.data() + a.size(), std::greater<double>());
  return a;
}

double sorted_l1_norm(const Vector& v, const WeightSchedule& w) {
  if (v.size() != w.size())
    throw std::invalid_argument("sorted_l1_norm: dimension mismatch");
  const Vector a = rearrange_desc(v);
  double acc = 0.0;
  for (Index j = 0; j < a.size(); ++j) acc += w[j] * a[j];
  return acc;
}

double best_s_term_error_star(const Vector& beta, const WeightSchedule& w, Index s) {
  const Index p = beta.size();
  if (p != w.size()) throw std::invalid_argument("best_s_term_error_star: dimension mismatch");
  if (s < 0 || s > p) throw std::invalid_argument("best_s_term_error_star: s out of range");
  const Vector a = rearrange_desc(beta);
  // Tail entries are ranked first among the residual, so they pair with
  // the leading weights.
  double acc = 0.0;
  for (Index j = s; j < p; ++j) acc += w[j - s] * a[j];
  return acc;
}

double best_s_term_error_l1(const Vector& beta, Index s) {
  const Index p = beta.size();
  if (s < 0 || s > p) throw std::invalid_argument("best_s_term_error_l1: s out of range");
  const Vector a = rearrange_desc(beta);
  double acc = 0.0;
  for (Index j = s; j < p; ++j) acc += a[j];
  return acc;
}

double weighted_tail_sum(const Vector& beta, const WeightSchedule& w, Index s) {
  const Index p = beta.size();
  if (p != w.size()) throw std::invalid_argument("weighted_tail_sum: dimension mismatch");
  if (s < 0 || s > p) throw std::invalid_argument("weighted_tail_sum: s out of range");
  const Vector a = rearrange_desc(beta);
  double acc = 0.0;
  for (Index j = s; j < p; ++j) acc += w[j] * a[j];
  return acc;
}

double q_ratio_sparsity(const Vector& delta, const NormOrder& q) {
  if (!q.is_inf() && q.value() <= 1.0)
    throw std::invalid_argument("q_ratio_sparsity: requires q > 1");
  const double l1 = lq_norm(delta, NormOrder::finite(1.0));
  if (l1 == 0.0) throw std::invalid_argument("q_ratio_sparsity: zero vector");
  const double lq = lq_norm(delta, q);
  return std::pow(l1 / lq, q.conjugate());
}

double lr_quasinorm(const Vector& v, double r) {
  if (!(r > 0.0) || !(r < 1.0))
    throw std::invalid_argument("lr_quasinorm: requires 0 < r < 1");
  if (v.size() == 0) return 0.0;
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / m, r);
  return m * std::pow(acc, 1.0 / r);
}

CompressibilityBound lr_compressibility_bound(const Vector& beta, const WeightSchedule& w,
                                              Index s, double r) {
  const Index p = beta.size();
  if (p != w.size())
    throw std::invalid_argument("lr_compressibility_bound: dimension mismatch");
  if (s < 1 || s > p) throw std::invalid_argument("lr_compressibility_bound: s out of range");
  CompressibilityBound out;
  out.lhs = weighted_tail_sum(beta, w, s);
  out.rhs = w[s - 1] * std::pow(static_cast<double>(s), r / (1.0 - r)) * lr_quasinorm(beta, r);
  return out;
}

SparsityReport sparsity_report(const Vector& beta, const WeightSchedule& w, Index s,
                               const NormOrder& q) {
  SparsityReport rep;
  rep.s = s;
  rep.sigma_s_star = best_s_term_error_star(beta, w, s);
  rep.sigma_s_l1 = best_s_term_error_l1(beta, s);
  rep.q_ratio = q_ratio_sparsity(beta, q);
  return rep;
}

}  // namespace slope
