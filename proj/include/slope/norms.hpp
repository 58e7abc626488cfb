#pragma once

#include <stdexcept>

#include "slope/qnorm.hpp"
#include "slope/types.hpp"

namespace slope {

// Non-increasing, non-negative weight sequence lambda_1 >= ... >= lambda_p >= 0.
class WeightSchedule {
 public:
  explicit WeightSchedule(Vector w);

  Index size() const { return w_.size(); }
  // 0-based: operator[](j) is lambda_{j+1}.
  double operator[](Index j) const { return w_[j]; }
  const Vector& values() const { return w_; }

 private:
  Vector w_;
};

// |v| sorted in non-increasing order.
Vector rearrange_desc(const Vector& v);

// sum_j lambda_j v#_j where v# is the non-increasing rearrangement of |v|.
double sorted_l1_norm(const Vector& v, const WeightSchedule& w);

// min over s-sparse z of the weighted sorted-l1 distance to beta.  The
// minimum is attained by zeroing the s largest magnitudes (lowest index
// wins ties), which re-indexes the tail against lambda_1, ..., lambda_{p-s}.
double best_s_term_error_star(const Vector& beta, const WeightSchedule& w, Index s);

// sum_{j>s} beta#_j: the l1 distance to the best s-sparse approximation.
double best_s_term_error_l1(const Vector& beta, Index s);

// sum_{j>s} lambda_j beta#_j, weights keeping their original index.
double weighted_tail_sum(const Vector& beta, const WeightSchedule& w, Index s);

// Effective sparsity (||delta||_1 / ||delta||_q)^{q/(q-1)}; requires q > 1
// and delta != 0.  Lies in [1, p]; equals ||delta||_0 on flat vectors.
double q_ratio_sparsity(const Vector& delta, const NormOrder& q);

// (sum_j |v_j|^r)^{1/r} for 0 < r < 1.
double lr_quasinorm(const Vector& v, double r);

struct CompressibilityBound {
  double lhs;  // sum_{j>s} lambda_j beta#_j
  double rhs;  // lambda_s * s^{r/(1-r)} * ||beta||_r
};

// Tail of the weighted rearrangement against the radius of the smallest
// lr-ball containing beta; lhs <= rhs for every input.
CompressibilityBound lr_compressibility_bound(const Vector& beta, const WeightSchedule& w,
                                              Index s, double r);

struct SparsityReport {
  Index s;
  double sigma_s_star;
  double sigma_s_l1;
  double q_ratio;
};

SparsityReport sparsity_report(const Vector& beta, const WeightSchedule& w, Index s,
                               const NormOrder& q);

}  // namespace slope
