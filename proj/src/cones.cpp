#include "slope/cones.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "slope/parallel.hpp"
#include "slope/rng.hpp"

namespace slope {

namespace {

constexpr double kMemberSlack = 1e-12;

bool leq_with_slack(double lhs, double rhs) {
  return lhs <= rhs + kMemberSlack * std::max(1.0, rhs);
}

void check_qs(const NormOrder& q, Index s, Index p, double c0) {
  if (!q.is_inf() && q.value() < 2.0)
    throw std::invalid_argument("cone: requires q in [2, inf]");
  if (s < 1 || s > p) throw std::invalid_argument("cone: requires 1 <= s <= p");
  if (!(c0 > 0.0)) throw std::invalid_argument("cone: requires c0 > 0");
}

double binomial_count(Index p, Index s, double cap) {
  double c = 1.0;
  for (Index i = 1; i <= s; ++i) {
    c *= static_cast<double>(p - s + i) / static_cast<double>(i);
    if (c > cap) return c;
  }
  return c;
}

template <typename F>
void for_each_support(Index p, Index s, F&& fn) {
  std::vector<Index> idx(static_cast<std::size_t>(s));
  std::iota(idx.begin(), idx.end(), Index{0});
  while (true) {
    fn(idx);
    Index i = s - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == p - s + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (Index j = i + 1; j < s; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
}

// Scale-free description of either cone: lhs(d) <= scale * ||d||_q.
struct ConeGeom {
  NormOrder q = NormOrder::finite(2.0);
  Index s = 1;
  double scale = 0.0;
  std::optional<WeightSchedule> w;  // engaged for the weighted cone

  double lhs(const Vector& d) const {
    return w ? sorted_l1_norm(d, *w) : d.cwiseAbs().sum();
  }
  bool member(const Vector& d) const { return leq_with_slack(lhs(d), scale * lq_norm(d, q)); }

  // Retraction: keep the s largest magnitudes, shrink the rest until the
  // defining inequality holds.  Any s-sparse vector is a member, so the
  // bisection always brackets.
  Vector project(const Vector& d) const {
    if (member(d)) return d;
    const Index p = d.size();
    std::vector<Index> order(static_cast<std::size_t>(p));
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index a, Index b) { return std::abs(d[a]) > std::abs(d[b]); });
    Vector head = Vector::Zero(p), tail = Vector::Zero(p);
    for (Index r = 0; r < p; ++r) {
      const Index j = order[static_cast<std::size_t>(r)];
      (r < s ? head[j] : tail[j]) = d[j];
    }
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      (member(head + mid * tail) ? lo : hi) = mid;
    }
    return head + lo * tail;
  }
};

double ratio_value(const Matrix& X, const Vector& d, const NormOrder& q) {
  return (X * d).norm() / (std::sqrt(static_cast<double>(X.rows())) * lq_norm(d, q));
}

// Gradient of d -> ||Xd||_2/(sqrt(n)||d||_q); at q = inf the subgradient
// picks the first coordinate attaining the max.
Vector ratio_grad(const Matrix& X, const Vector& d, const NormOrder& q) {
  const double n = static_cast<double>(X.rows());
  const Vector Xd = X * d;
  const double a = Xd.norm() / std::sqrt(n);
  const double b = lq_norm(d, q);
  const Vector ga = (X.transpose() * Xd) / (n * a);
  Vector gb(d.size());
  if (q.is_inf()) {
    gb.setZero();
    Index k = 0;
    d.cwiseAbs().maxCoeff(&k);
    gb[k] = d[k] >= 0.0 ? 1.0 : -1.0;
  } else if (q.value() == 2.0) {
    gb = d / b;
  } else {
    const double qq = q.value();
    for (Index j = 0; j < d.size(); ++j) {
      const double t = std::pow(std::abs(d[j]) / b, qq - 1.0);
      gb[j] = d[j] >= 0.0 ? t : -t;
    }
  }
  return ga / b - (a / (b * b)) * gb;
}

struct Candidate {
  double value = std::numeric_limits<double>::infinity();
  Vector point;
};

Candidate descend(const Matrix& X, const ConeGeom& geo, Vector d, const RESearchConfig& cfg) {
  Candidate best;
  double nq = lq_norm(d, geo.q);
  if (nq <= 0.0) return best;
  d /= nq;
  best.value = ratio_value(X, d, geo.q);
  best.point = d;
  for (int it = 0; it < cfg.steps; ++it) {
    if (best.value < 1e-14) break;  // inside the null space; cannot improve
    const Vector g = ratio_grad(X, best.point, geo.q);
    double eta = cfg.step;
    bool improved = false;
    for (int t = 0; t < 30; ++t, eta *= 0.5) {
      Vector cand = geo.project(best.point - eta * g);
      const double cn = lq_norm(cand, geo.q);
      if (cn <= 0.0) continue;
      cand /= cn;
      const double cv = ratio_value(X, cand, geo.q);
      if (cv < best.value * (1.0 - 1e-14)) {
        best.value = cv;
        best.point = std::move(cand);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return best;
}

REEstimate search_min_ratio(const Matrix& X, const ConeGeom& geo, const RESearchConfig& cfg) {
  const Index p = X.cols();
  if (cfg.strict_normalization) {
    const double max_col = X.colwise().norm().maxCoeff();
    if (max_col > std::sqrt(static_cast<double>(X.rows())) * (1.0 + 1e-9))
      throw std::invalid_argument("cone search: design columns exceed unit norm (strict mode)");
  }

  // Stage 1: all sign vectors with support size up to s (global sign modded
  // out).  The smaller supports matter: for q > 2 the minimizer can be
  // strictly sparser than s, e.g. one-sparse on an orthogonal design.
  Candidate enum_best;
  double raw_count = 0.0;
  for (Index k = 1; k <= geo.s; ++k)
    raw_count +=
        binomial_count(p, k, cfg.enumeration_budget) * std::ldexp(1.0, static_cast<int>(k - 1));
  const bool enum_ran = raw_count <= cfg.enumeration_budget;
  if (enum_ran) {
    Vector d = Vector::Zero(p);
    for (Index k = 1; k <= geo.s; ++k) {
      const std::uint64_t masks = 1ull << (k - 1);
      for_each_support(p, k, [&](const std::vector<Index>& sup) {
        for (std::uint64_t m = 0; m < masks; ++m) {
          d.setZero();
          d[sup[0]] = 1.0;
          for (Index j = 1; j < k; ++j)
            d[sup[static_cast<std::size_t>(j)]] = (m >> (j - 1)) & 1ull ? -1.0 : 1.0;
          const double v = ratio_value(X, d, geo.q);
          if (v < enum_best.value) {
            enum_best.value = v;
            enum_best.point = d;
          }
        }
      });
    }
  }

  // Stage 2: projected gradient descent from mixed random starts.
  std::vector<Candidate> slots(static_cast<std::size_t>(std::max(cfg.restarts, 0)));
  parallel_for(cfg.restarts, [&](int i) {
    auto eng = make_engine(cfg.seed, 0x5245u + static_cast<std::uint64_t>(i));
    Vector start;
    if (i % 2 == 0) {
      start = geo.project(gaussian_vector(p, eng));
    } else {
      start = Vector::Zero(p);
      std::vector<Index> pool(static_cast<std::size_t>(p));
      std::iota(pool.begin(), pool.end(), Index{0});
      for (Index k = 0; k < geo.s; ++k) {
        const std::size_t remaining = pool.size() - static_cast<std::size_t>(k);
        std::size_t r = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(remaining));
        if (r >= remaining) r = remaining - 1;
        std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(k) + r]);
        start[pool[static_cast<std::size_t>(k)]] = uniform01(eng) < 0.5 ? -1.0 : 1.0;
      }
    }
    slots[static_cast<std::size_t>(i)] = descend(X, geo, std::move(start), cfg);
  });

  Candidate rand_best;
  for (const auto& c : slots)
    if (c.point.size() > 0 && c.value < rand_best.value) rand_best = c;

  REEstimate est;
  est.restarts = cfg.restarts;
  const bool from_enum =
      enum_ran && enum_best.point.size() > 0 && enum_best.value <= rand_best.value;
  const Candidate& winner = from_enum ? enum_best : rand_best;
  if (winner.point.size() == 0)
    throw std::invalid_argument("cone search: no candidate produced (restarts == 0?)");
  est.method = from_enum ? "exact-enumeration" : "randomized-search";
  est.witness = winner.point / lq_norm(winner.point, geo.q);
  est.value = ratio_value(X, est.witness, geo.q);
  return est;
}

bool is_sqrt_log_shape(const WeightSchedule& w) {
  const Index p = w.size();
  const double ref = std::sqrt(std::log(2.0 * static_cast<double>(p)));
  if (!(w[0] > 0.0)) return false;
  const double scale = w[0] / ref;
  for (Index j = 0; j < p; ++j) {
    const double expect = scale * std::sqrt(std::log(2.0 * static_cast<double>(p) /
                                                     static_cast<double>(j + 1)));
    if (std::abs(w[j] - expect) > 1e-9 * std::max(1.0, expect)) return false;
  }
  return true;
}

}  // namespace

void ConeSpec::validate(Index p) const {
  check_qs(q, s, p, c0);
  if (kind == ConeKind::WRE) {
    if (!weights) throw std::invalid_argument("ConeSpec: weighted cone needs weights");
    if (weights->size() != p) throw std::invalid_argument("ConeSpec: weight dimension mismatch");
  }
}

bool cone_member(const Vector& delta, const ConeSpec& spec) {
  spec.validate(delta.size());
  double scale;
  double lhs;
  if (spec.kind == ConeKind::SRE) {
    scale = (1.0 + spec.c0) * std::pow(static_cast<double>(spec.s), spec.q.one_minus_inv());
    lhs = delta.cwiseAbs().sum();
  } else {
    scale = (1.0 + spec.c0) * capital_lambda_q(*spec.weights, spec.s, spec.q);
    lhs = sorted_l1_norm(delta, *spec.weights);
  }
  return leq_with_slack(lhs, scale * lq_norm(delta, spec.q));
}

bool sre_member_real(const Vector& delta, const NormOrder& q, double s_real, double c0) {
  if (!(s_real >= 1.0)) throw std::invalid_argument("sre_member_real: requires s >= 1");
  if (!(c0 > 0.0)) throw std::invalid_argument("sre_member_real: requires c0 > 0");
  const double scale = (1.0 + c0) * std::pow(s_real, q.one_minus_inv());
  return leq_with_slack(delta.cwiseAbs().sum(), scale * lq_norm(delta, q));
}

REEstimate estimate_theta_q(const Matrix& X, const NormOrder& q, Index s, double c0,
                            const RESearchConfig& cfg) {
  check_qs(q, s, X.cols(), c0);
  ConeGeom geo;
  geo.q = q;
  geo.s = s;
  geo.scale = (1.0 + c0) * std::pow(static_cast<double>(s), q.one_minus_inv());
  return search_min_ratio(X, geo, cfg);
}

REEstimate estimate_nu_q(const Matrix& X, const WeightSchedule& w, const NormOrder& q, Index s,
                         double c0, const RESearchConfig& cfg) {
  check_qs(q, s, X.cols(), c0);
  if (w.size() != X.cols()) throw std::invalid_argument("estimate_nu_q: weight size mismatch");
  ConeGeom geo;
  geo.q = q;
  geo.s = s;
  geo.scale = (1.0 + c0) * capital_lambda_q(w, s, q);
  geo.w = w;
  return search_min_ratio(X, geo, cfg);
}

double max_sparse_eigenvalue(const Matrix& X, Index s, double support_budget) {
  const Index p = X.cols();
  if (s < 1 || s > p) throw std::invalid_argument("max_sparse_eigenvalue: s out of range");
  if (binomial_count(p, s, support_budget) > support_budget)
    throw std::invalid_argument(
        "max_sparse_eigenvalue: support count exceeds budget; use the randomized variant");
  const double n = static_cast<double>(X.rows());
  double best = 0.0;
  Matrix block(X.rows(), s);
  for_each_support(p, s, [&](const std::vector<Index>& sup) {
    for (Index k = 0; k < s; ++k) block.col(k) = X.col(sup[static_cast<std::size_t>(k)]);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(block.transpose() * block,
                                              Eigen::EigenvaluesOnly);
    best = std::max(best, eig.eigenvalues().maxCoeff());
  });
  return std::sqrt(best / n);
}

double max_sparse_eigenvalue_randomized(const Matrix& X, Index s, int probes,
                                        std::uint64_t seed) {
  const Index p = X.cols();
  if (s < 1 || s > p) throw std::invalid_argument("max_sparse_eigenvalue: s out of range");
  if (probes < 1) throw std::invalid_argument("max_sparse_eigenvalue: probes must be positive");
  const double n = static_cast<double>(X.rows());

  auto value_of = [&](const std::vector<Index>& sup) {
    Matrix block(X.rows(), s);
    for (Index k = 0; k < s; ++k) block.col(k) = X.col(sup[static_cast<std::size_t>(k)]);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(block.transpose() * block,
                                              Eigen::EigenvaluesOnly);
    return eig.eigenvalues().maxCoeff();
  };

  double best = 0.0;
  for (int probe = 0; probe < probes; ++probe) {
    auto eng = make_engine(seed, 0xe16u + static_cast<std::uint64_t>(probe));
    std::vector<Index> pool(static_cast<std::size_t>(p));
    std::iota(pool.begin(), pool.end(), Index{0});
    for (Index k = 0; k < s; ++k) {
      const std::size_t remaining = pool.size() - static_cast<std::size_t>(k);
      std::size_t r = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(remaining));
      if (r >= remaining) r = remaining - 1;
      std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(k) + r]);
    }
    std::vector<Index> sup(pool.begin(), pool.begin() + s);
    double cur = value_of(sup);
    // Single-index swap ascent until no move improves.
    bool moved = true;
    for (int pass = 0; pass < 50 && moved; ++pass) {
      moved = false;
      for (Index slot = 0; slot < s && !moved; ++slot) {
        for (Index j = 0; j < p && !moved; ++j) {
          if (std::find(sup.begin(), sup.end(), j) != sup.end()) continue;
          const Index old = sup[static_cast<std::size_t>(slot)];
          sup[static_cast<std::size_t>(slot)] = j;
          const double v = value_of(sup);
          if (v > cur * (1.0 + 1e-12)) {
            cur = v;
            moved = true;
          } else {
            sup[static_cast<std::size_t>(slot)] = old;
          }
        }
      }
    }
    best = std::max(best, cur);
  }
  return std::sqrt(best / n);
}

Index s_q_threshold(Index s, Index p, const NormOrder& q) {
  if (s < 1 || s > p) throw std::invalid_argument("s_q_threshold: requires 1 <= s <= p");
  if (!q.is_inf() && q.value() <= 1.0)
    throw std::invalid_argument("s_q_threshold: requires q > 1");
  const double ratio = std::log(2.0 * std::numbers::e * static_cast<double>(p) /
                                static_cast<double>(s)) /
                       std::numbers::ln2;
  const double val = static_cast<double>(s) * std::pow(std::sqrt(ratio), q.conjugate());
  return static_cast<Index>(std::ceil(val));
}

bool check_sre_to_wre_containment(const Vector& delta, const NormOrder& q, Index s, double c0,
                                  Index p) {
  if (delta.size() != p) throw std::invalid_argument("containment: dimension mismatch");
  ConeSpec sre{ConeKind::SRE, q, s, c0, std::nullopt};
  if (!cone_member(delta, sre)) return true;
  ConeSpec wre{ConeKind::WRE, q, s, 1.0 + c0, sqrt_log_weights(p)};
  return cone_member(delta, wre);
}

bool check_sre_order_reduction(const Vector& delta, const NormOrder& q, Index s, double c0) {
  ConeSpec sre{ConeKind::SRE, q, s, c0, std::nullopt};
  if (!cone_member(delta, sre)) return true;
  const double s_real = std::pow(static_cast<double>(s), 2.0 - 2.0 * q.inv());
  return sre_member_real(delta, NormOrder::finite(2.0), s_real, c0);
}

bool check_wre_to_sre_containment(const Vector& delta, const WeightSchedule& w, const NormOrder& q,
                                  Index s, double c0) {
  if (delta.size() != w.size()) throw std::invalid_argument("containment: dimension mismatch");
  if (!is_sqrt_log_shape(w))
    throw std::invalid_argument("containment: weights must be sqrt-log shaped");
  ConeSpec wre{ConeKind::WRE, q, s, c0, w};
  if (!cone_member(delta, wre)) return true;
  const Index sq = s_q_threshold(s, delta.size(), q);
  return sre_member_real(delta, q, static_cast<double>(sq), c0);
}

}  // namespace slope
