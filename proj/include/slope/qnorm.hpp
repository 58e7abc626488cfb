#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "slope/types.hpp"

namespace slope {

// Norm exponent q in [1, inf]; infinity is a first-class value, not a
// sentinel double, so call sites cannot forget the limit case.
class NormOrder {
 public:
  static NormOrder finite(double q) {
    if (!(q >= 1.0) || !std::isfinite(q))
      throw std::invalid_argument("NormOrder: finite exponent must satisfy q >= 1");
    return NormOrder(q);
  }
  static NormOrder infinity() { return NormOrder(std::numeric_limits<double>::infinity()); }

  bool is_inf() const { return std::isinf(q_); }
  // Finite exponent; throws for the infinity order.
  double value() const {
    if (is_inf()) throw std::invalid_argument("NormOrder: value() of infinity order");
    return q_;
  }

  // 1/q, with the limit 0 at infinity.
  double inv() const { return is_inf() ? 0.0 : 1.0 / q_; }
  // 1 - 1/q, with the limit 1 at infinity.
  double one_minus_inv() const { return 1.0 - inv(); }

  // q/(q-1); defined for q > 1 (1 at infinity).
  double conjugate() const {
    if (is_inf()) return 1.0;
    if (q_ <= 1.0) throw std::invalid_argument("NormOrder: conjugate exponent requires q > 1");
    return q_ / (q_ - 1.0);
  }

  bool operator==(const NormOrder& o) const {
    return (is_inf() && o.is_inf()) || (!is_inf() && !o.is_inf() && q_ == o.q_);
  }

  std::string str() const { return is_inf() ? "inf" : std::to_string(q_); }

 private:
  explicit NormOrder(double q) : q_(q) {}
  double q_;
};

// lq norm for q in [1, inf]; scaled to avoid overflow for large finite q.
inline double lq_norm(const Vector& v, const NormOrder& q) {
  if (v.size() == 0) return 0.0;
  if (q.is_inf()) return v.cwiseAbs().maxCoeff();
  const double qq = q.value();
  if (qq == 1.0) return v.cwiseAbs().sum();
  if (qq == 2.0) return v.norm();
  const double m = v.cwiseAbs().maxCoeff();
  if (m == 0.0) return 0.0;
  double acc = 0.0;
  for (Index i = 0; i < v.size(); ++i) acc += std::pow(std::abs(v[i]) / m, qq);
  return m * std::pow(acc, 1.0 / qq);
}

}  // namespace slope
