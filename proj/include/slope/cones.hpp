#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "slope/norms.hpp"
#include "slope/weights.hpp"

namespace slope {

// Two dimension-reduction cones: SRE compares the l1 norm against the lq
// norm at sparsity s; WRE replaces l1 by the weighted sorted norm and s by
// the partial weight norm.  Both are scale invariant.
enum class ConeKind { SRE, WRE };

struct ConeSpec {
  ConeKind kind = ConeKind::SRE;
  NormOrder q = NormOrder::finite(2.0);
  Index s = 1;
  double c0 = 1.0;
  std::optional<WeightSchedule> weights;  // required for WRE

  void validate(Index p) const;
};

// Membership with a 1e-12 relative slack on the defining inequality.
bool cone_member(const Vector& delta, const ConeSpec& spec);

// SRE membership at a real-valued sparsity level (the q -> 2 reduction
// lands on the non-integer level s^(2-2/q)).
bool sre_member_real(const Vector& delta, const NormOrder& q, double s_real, double c0);

struct RESearchConfig {
  int restarts = 200;
  int steps = 500;
  double step = 1e-2;
  std::uint64_t seed = 0;
  double enumeration_budget = 1e6;  // candidate count cap for the sign-vector stage
  bool strict_normalization = false;
};

struct REEstimate {
  double value = 0.0;
  // "exact-enumeration" when the complete s-sparse sign-vector stage
  // produced the best value, otherwise "randomized-search".
  std::string method;
  // The search minimizes over a subset of the cone, so the reported value
  // can only overstate the true minimum; bounds built from it are honest
  // only in that direction.
  std::string direction = "upper-bound-on-minimum";
  int restarts = 0;
  Vector witness;  // unit lq norm, inside the cone, ratio equals value
};

// min ||X d||_2 / (sqrt(n) ||d||_q) over the SRE cone, upper-bounded by
// enumeration of flat s-sparse sign vectors plus projected gradient
// descent with random restarts.
REEstimate estimate_theta_q(const Matrix& X, const NormOrder& q, Index s, double c0,
                            const RESearchConfig& cfg = {});

// Same ratio minimized over the WRE cone of the given weights.
REEstimate estimate_nu_q(const Matrix& X, const WeightSchedule& w, const NormOrder& q, Index s,
                         double c0, const RESearchConfig& cfg = {});

// max over supports |S| = s of the top singular value of X_S / sqrt(n);
// exhaustive, throws when the support count exceeds the budget.
double max_sparse_eigenvalue(const Matrix& X, Index s, double support_budget = 1e6);

// Randomized alternative: sampled supports refined by single-index swaps.
double max_sparse_eigenvalue_randomized(const Matrix& X, Index s, int probes,
                                        std::uint64_t seed);

// ceil(s * sqrt(log(2ep/s)/log 2)^(q/(q-1))): the sparsity level at which
// an SRE condition implies the WRE condition for sqrt-log weights.
Index s_q_threshold(Index s, Index p, const NormOrder& q);

// SRE(q,s) membership implies WRE(q,s) membership with c0 bumped by one;
// weights enter in sqrt-log shape (any positive scale).
bool check_sre_to_wre_containment(const Vector& delta, const NormOrder& q, Index s, double c0,
                                  Index p);

// SRE(q,s) membership implies SRE(2, s^(2-2/q)) membership.
bool check_sre_order_reduction(const Vector& delta, const NormOrder& q, Index s, double c0);

// WRE(q,s) membership under sqrt-log weights implies SRE(q, s_q) membership.
bool check_wre_to_sre_containment(const Vector& delta, const WeightSchedule& w, const NormOrder& q,
                                  Index s, double c0);

}  // namespace slope
