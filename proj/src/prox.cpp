#include "slope/prox.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace slope {

Vector prox_sorted_l1(const Vector& v, const WeightSchedule& w) {
  const Index p = v.size();
  if (p != w.size()) throw std::invalid_argument("prox_sorted_l1: dimension mismatch");
  for (Index i = 0; i < p; ++i)
    if (!std::isfinite(v[i])) throw std::invalid_argument("prox_sorted_l1: non-finite input");

  // Order |v| non-increasingly; ties keep the lower original index first.
  std::vector<Index> order(static_cast<std::size_t>(p));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(v[a]) > std::abs(v[b]);
  });

  // On the sorted magnitudes the problem is the isotonic regression of
  // y_i = |v|#_i - w_i onto the non-increasing cone, clamped at zero.
  // Blocks carry (start index, average); merging preserves the average.
  std::vector<Index> block_start(static_cast<std::size_t>(p));
  std::vector<Index> block_end(static_cast<std::size_t>(p));
  std::vector<double> block_sum(static_cast<std::size_t>(p));
  std::vector<double> block_avg(static_cast<std::size_t>(p));
  std::size_t k = 0;
  for (Index i = 0; i < p; ++i) {
    block_start[k] = i;
    block_end[k] = i;
    block_sum[k] = std::abs(v[order[static_cast<std::size_t>(i)]]) - w[i];
    block_avg[k] = block_sum[k];
    ++k;
    while (k > 1 && block_avg[k - 2] <= block_avg[k - 1]) {
      block_end[k - 2] = block_end[k - 1];
      block_sum[k - 2] += block_sum[k - 1];
      block_avg[k - 2] =
          block_sum[k - 2] / static_cast<double>(block_end[k - 2] - block_start[k - 2] + 1);
      --k;
    }
  }

  Vector x = Vector::Zero(p);
  for (std::size_t b = 0; b < k; ++b) {
    const double m = std::max(block_avg[b], 0.0);
    if (m == 0.0) continue;
    for (Index i = block_start[b]; i <= block_end[b]; ++i) {
      const Index j = order[static_cast<std::size_t>(i)];
      x[j] = (v[j] < 0.0 ? -m : m);
    }
  }
  return x;
}

Vector soft_threshold(const Vector& v, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("soft_threshold: negative threshold");
  Vector x(v.size());
  for (Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v[i]) - t;
    x[i] = m <= 0.0 ? 0.0 : (v[i] < 0.0 ? -m : m);
  }
  return x;
}

}  // namespace slope
