#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "slope/bounds.hpp"
#include "slope/harness.hpp"
#include "slope/norms.hpp"
#include "slope/weights.hpp"

using namespace slope;

namespace {

BoundParams base_params() {
  BoundParams params;
  params.q = NormOrder::finite(2.0);
  params.s = 4;
  params.gamma = 0.5;
  params.tau = 0.25;
  params.delta0 = 0.1;
  params.re_constant = 1.0;
  return params;
}

ProblemInstance gaussian_instance(Index n, Index p, unsigned seed, double sigma) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> gauss;
  Matrix X(n, p);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < p; ++j) X(i, j) = gauss(eng);
  for (Index j = 0; j < p; ++j) {
    const double norm = X.col(j).norm();
    if (norm > 0.0) X.col(j) *= std::sqrt(static_cast<double>(n)) / norm;
  }
  Vector beta = Vector::Zero(p);
  beta[0] = 1.5;
  beta[1] = -0.75;
  Vector f = X * beta;
  Vector xi(n);
  for (Index i = 0; i < n; ++i) xi[i] = gauss(eng);
  return ProblemInstance::make(X, f + sigma * xi, sigma, beta, f);
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("parameter validation rejects out-of-range inputs") {
  CHECK_NOTHROW(base_params().validate());
  auto bad = base_params();
  bad.q = NormOrder::finite(1.5);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = base_params();
  bad.s = 0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = base_params();
  bad.gamma = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = base_params();
  bad.gamma = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = base_params();
  bad.tau = -0.1;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = base_params();
  bad.tau = 0.5;  // tau must stay below 1 - gamma
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = base_params();
  bad.delta0 = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = base_params();
  bad.re_constant = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  CHECK_THROWS_AS(c_gamma_tau(base_params(), 0.0, 1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(c_gamma_tau(base_params(), 1.0, -1.0, 10), std::invalid_argument);
  CHECK_THROWS_AS(c_gamma_tau(base_params(), 1.0, 1.0, 0), std::invalid_argument);
  auto big_s = base_params();
  big_s.s = 100;
  CHECK_THROWS_AS(c_prime_gamma_tau(big_s, 50), std::invalid_argument);
}

TEST_CASE("tuning-scale constant hits 49/16 in the sparse branch") {
  // gamma = 1/2, tau = 1/4 and a confidence level loose enough that the
  // sparsity branch s^(1-2/q)/theta^2 = 1 dominates.
  const auto params = base_params();
  const double lambda = 0.5, sigma = 0.5;
  const Index n = 400;
  const double t = params.gamma * lambda * std::sqrt(static_cast<double>(n)) /
                   (k4PlusSqrt2 * sigma);
  REQUIRE(std::log(1.0 / params.delta0) / (4.0 * t * t) < 1.0);
  CHECK(c_gamma_tau(params, lambda, sigma, n) == doctest::Approx(49.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("tuning-scale constant: both branches agree at the crossover confidence") {
  BoundParams params;
  params.q = NormOrder::finite(3.0);
  params.s = 4;
  params.gamma = 0.4;
  params.tau = 0.2;
  params.re_constant = 1.3;
  const double lambda = 0.7, sigma = 0.9;
  const Index n = 256;
  const double t = params.gamma * lambda * std::sqrt(static_cast<double>(n)) /
                   (k4PlusSqrt2 * sigma);
  // Confidence level at which log(1/delta0)/(s t^2) equals s^(1-2/q)/theta^2.
  const double exponent = std::pow(4.0, 2.0 - 2.0 / 3.0) / (1.3 * 1.3);
  params.delta0 = std::exp(-t * t * exponent);
  REQUIRE(params.delta0 > 0.0);
  REQUIRE(params.delta0 < 1.0);
  const double pref = 1.0 + params.gamma + params.tau;
  const double expected = pref * pref * std::pow(4.0, 1.0 - 2.0 / 3.0) / (1.3 * 1.3);
  CHECK(c_gamma_tau(params, lambda, sigma, n) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("tuning-scale constant survives huge lambda without underflow") {
  // exp(-t^2) underflows at this scale; the constant must be computed from
  // t^2 directly and settle on the sparsity branch.
  const auto params = base_params();
  const double c = c_gamma_tau(params, 1e6, 0.5, 400);
  CHECK(std::isfinite(c));
  CHECK(c == doctest::Approx(49.0 / 16.0).epsilon(1e-14));
}

TEST_CASE("dimension-scale constant hits 49/16 and matches its crossover") {
  auto params = base_params();
  params.s = 3;
  CHECK(c_prime_gamma_tau(params, 30) == doctest::Approx(49.0 / 16.0).epsilon(1e-14));

  // At delta0 = (s/2p)^(s/nu^2) both branches coincide at 1/nu^2.
  BoundParams cross;
  cross.q = NormOrder::finite(2.0);
  cross.s = 3;
  cross.gamma = 0.4;
  cross.tau = 0.2;
  cross.re_constant = 1.2;
  const Index p = 50;
  cross.delta0 = std::pow(3.0 / (2.0 * static_cast<double>(p)), 3.0 / (1.2 * 1.2));
  const double pref = 1.0 + cross.gamma + cross.tau;
  CHECK(c_prime_gamma_tau(cross, p) ==
        doctest::Approx(pref * pref / (1.2 * 1.2)).epsilon(1e-10));
}

TEST_CASE("dimension-scale constant falls back to the confidence branch for huge nu") {
  auto params = base_params();
  params.s = 3;
  params.re_constant = 1e9;
  const Index p = 50;
  const double expected = 49.0 / 16.0 * std::log(10.0) /
                          (3.0 * std::log(2.0 * 50.0 / 3.0));
  CHECK(c_prime_gamma_tau(params, p) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("lasso right-hand sides: closed forms at gamma=1/2, tau=1/4") {
  const auto params = base_params();  // q=2, s=4, theta=1, branch2 dominant
  const double lambda = 0.5, sigma = 0.5, sigma_s = 0.3;
  const Index n = 400;
  const auto rep = lasso_bound_rhs(params, lambda, sigma_s, sigma, n);
  CHECK(rep.constant == doctest::Approx(49.0 / 16.0).epsilon(1e-14));
  CHECK(rep.rhs_prediction ==
        doctest::Approx(49.0 / 16.0 * lambda * lambda * 4.0 + 4.0 * lambda * sigma_s)
            .epsilon(1e-14));
  REQUIRE(rep.rhs_l1.has_value());
  CHECK(*rep.rhs_l1 ==
        doctest::Approx(49.0 * lambda * 4.0 / 8.0 + 8.0 * sigma_s).epsilon(1e-14));
  CHECK(rep.rhs_lq_sparse == doctest::Approx(49.0 * lambda * 2.0 / 24.0).epsilon(1e-14));
  REQUIRE(rep.rhs_lq_compressible.has_value());
  CHECK(*rep.rhs_lq_compressible ==
        doctest::Approx(49.0 * lambda * 2.0 / 12.0 + sigma_s / 2.0).epsilon(1e-14));

  // Exactly sparse target: the approximation terms vanish but nothing else.
  const auto sparse = lasso_bound_rhs(params, lambda, 0.0, sigma, n);
  CHECK(sparse.rhs_prediction ==
        doctest::Approx(3.0625 * lambda * lambda * 4.0).epsilon(1e-14));
  CHECK(sparse.rhs_prediction > 0.0);
  CHECK(*sparse.rhs_l1 > 0.0);
  CHECK(sparse.rhs_lq_sparse == rep.rhs_lq_sparse);
}

TEST_CASE("lasso right-hand sides scale as s^(1-1/q) and s^(2-2/q) for q=3") {
  auto params = base_params();
  params.q = NormOrder::finite(3.0);
  const double lambda = 0.5, sigma = 0.5;
  const auto rep = lasso_bound_rhs(params, lambda, 0.2, sigma, 400);
  const double s = 4.0;
  CHECK(rep.constant == doctest::Approx(49.0 / 16.0 * std::pow(s, 1.0 / 3.0)).epsilon(1e-13));
  CHECK(rep.rhs_lq_sparse ==
        doctest::Approx(49.0 * lambda * std::pow(s, 2.0 / 3.0) / 24.0).epsilon(1e-13));
  CHECK(*rep.rhs_l1 ==
        doctest::Approx(49.0 * lambda * std::pow(s, 4.0 / 3.0) / 8.0 + 8.0 * 0.2)
            .epsilon(1e-13));
}

TEST_CASE("lasso right-hand sides drop the tau-divided lines at tau = 0") {
  auto params = base_params();
  params.tau = 0.0;
  const auto rep = lasso_bound_rhs(params, 0.5, 0.3, 0.5, 400);
  CHECK_FALSE(rep.rhs_l1.has_value());
  CHECK_FALSE(rep.rhs_lq_compressible.has_value());
  CHECK(rep.rhs_prediction > 0.0);
  CHECK(rep.rhs_lq_sparse > 0.0);
}

TEST_CASE("slope right-hand sides: closed forms in the scale of the weight norm") {
  auto params = base_params();
  params.s = 3;
  const Index p = 30;
  const WeightSchedule w = slope_weights({p, 200, 0.7, 1.1});
  const double Lam = capital_lambda_q(w, 3, NormOrder::finite(2.0));
  const double sigma_star = 0.4;
  const auto rep = slope_bound_rhs(params, w, sigma_star, p);
  CHECK(rep.constant == doctest::Approx(49.0 / 16.0).epsilon(1e-14));
  CHECK(rep.rhs_prediction ==
        doctest::Approx(49.0 / 16.0 * Lam * Lam + 4.0 * sigma_star).epsilon(1e-13));
  REQUIRE(rep.rhs_l1.has_value());
  CHECK(*rep.rhs_l1 ==
        doctest::Approx(49.0 * Lam * Lam / 8.0 + 8.0 * sigma_star).epsilon(1e-13));
  CHECK(rep.rhs_lq_sparse == doctest::Approx(49.0 * Lam / 24.0).epsilon(1e-13));
  REQUIRE(rep.rhs_lq_compressible.has_value());
  CHECK(*rep.rhs_lq_compressible ==
        doctest::Approx(49.0 * Lam / 12.0 + sigma_star / Lam).epsilon(1e-13));

  CHECK_THROWS_AS(slope_bound_rhs(params, slope_weights({10, 200, 0.7, 1.1}), 0.0, 30),
                  std::invalid_argument);
  CHECK_THROWS_AS(slope_bound_rhs(params, w, -1.0, p), std::invalid_argument);
}

TEST_CASE("re label is carried through unchanged") {
  const auto rep = lasso_bound_rhs(base_params(), 0.5, 0.0, 0.5, 400, "exact");
  CHECK(rep.re_label == "exact");
  CHECK(lasso_bound_rhs(base_params(), 0.5, 0.0, 0.5, 400).re_label == "estimated");
}

TEST_CASE("norm interpolation: endpoints, a worked midpoint, and range checks") {
  CHECK(interpolated_lq_bound(3.0, 7.0, 1.0) == doctest::Approx(3.0).epsilon(1e-15));
  CHECK(interpolated_lq_bound(3.0, 7.0, 2.0) == doctest::Approx(7.0).epsilon(1e-15));
  // (l1, l2, q) = (4, 1, 4/3): 4^(2/q-1) * 1^(2-2/q) = 4^(1/2) = 2.
  CHECK(interpolated_lq_bound(4.0, 1.0, 4.0 / 3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(interpolated_lq_bound(1.0, 1.0, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(interpolated_lq_bound(1.0, 1.0, 2.1), std::invalid_argument);
  CHECK_THROWS_AS(interpolated_lq_bound(-1.0, 1.0, 1.5), std::invalid_argument);

  // The interpolation is consistent with the norm inequality it encodes:
  // |u|_q <= |u|_1^(2/q-1) |u|_2^(2-2/q) for q in [1,2].
  std::mt19937_64 eng(77);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 200; ++rep) {
    Vector u(8);
    for (Index j = 0; j < 8; ++j) u[j] = gauss(eng);
    const double q = 1.0 + (rep % 11) * 0.1;
    const double lhs = lq_norm(u, NormOrder::finite(q));
    const double rhs = interpolated_lq_bound(lq_norm(u, NormOrder::finite(1.0)),
                                             lq_norm(u, NormOrder::finite(2.0)), q);
    CHECK(lhs <= rhs * (1.0 + 1e-12));
  }
}

TEST_CASE("event functionals: frozen value on a unit coordinate") {
  // p=2, n=1, sigma=1, u = e1: the weighted functional is
  // (4+sqrt 2) * sqrt(log 4) = 6.3747493123772943.
  Matrix X(1, 2);
  X << 1.0, 1.0;
  Vector y = Vector::Zero(1);
  Vector f = Vector::Zero(1);
  auto inst = ProblemInstance::make(X, y, 1.0, std::nullopt, f);
  Vector u(2);
  u << 1.0, 0.0;
  const auto ev = event_functionals(u, inst, 1, NormOrder::finite(2.0), 1.0, 0.5, 0.1);
  CHECK(ev.H == doctest::Approx(6.37474931237729428).epsilon(1e-14));
  CHECK(ev.lhs == 0.0);
}

TEST_CASE("event functionals: direct check of the prediction-scale term") {
  auto inst = gaussian_instance(40, 12, 901, 0.8);
  std::mt19937_64 eng(902);
  std::normal_distribution<double> gauss;
  Vector u(12);
  for (Index j = 0; j < 12; ++j) u[j] = gauss(eng);
  const double delta0 = 0.07;
  const auto ev = event_functionals(u, inst, 3, NormOrder::finite(2.0), 0.9, 0.5, delta0);
  const double expected = k4PlusSqrt2 * inst.sigma *
                          std::sqrt(std::log(1.0 / delta0) / 40.0) *
                          (inst.X * u).norm() / std::sqrt(40.0);
  CHECK(ev.G == doctest::Approx(expected).epsilon(1e-14));
  CHECK(ev.lhs == doctest::Approx(inst.noise().dot(inst.X * u) / 40.0).epsilon(1e-13));
}

TEST_CASE("event functionals agree with an independent transcription") {
  std::mt19937_64 eng(555);
  std::normal_distribution<double> gauss;
  for (int rep = 0; rep < 60; ++rep) {
    const Index n = 20 + (rep % 3) * 10;
    const Index p = 8 + (rep % 4) * 5;
    auto inst = gaussian_instance(n, p, 1000 + rep, 0.5 + 0.1 * (rep % 5));
    Vector u(p);
    for (Index j = 0; j < p; ++j) u[j] = gauss(eng);
    const Index s = 1 + rep % 4;
    const double q = (rep % 2 == 0) ? 2.0 : 3.0;
    const double lambda = 0.3 + 0.2 * (rep % 4);
    const double gamma = 0.3 + 0.1 * (rep % 5);
    const double delta0 = 0.05 + 0.01 * (rep % 7);
    const auto ev = event_functionals(u, inst, s, NormOrder::finite(q), lambda, gamma, delta0);
    const auto hg = oracle::event_pair(u, inst.X, inst.sigma, delta0);
    const auto tf = oracle::chain_pair(u, n, p, inst.sigma, s, q, lambda, gamma);
    CHECK(ev.H == doctest::Approx(hg.H).epsilon(1e-12));
    CHECK(ev.G == doctest::Approx(hg.G).epsilon(1e-12));
    CHECK(ev.H_tilde == doctest::Approx(tf.H_tilde).epsilon(1e-12));
    CHECK(ev.F == doctest::Approx(tf.F).epsilon(1e-12));
  }
}

TEST_CASE("event functionals obey the comparison chain at an admissible level") {
  // H <= H_tilde always; H_tilde <= F once lambda clears the minimal tuning
  // level for the given gamma.
  std::mt19937_64 eng(556);
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int rep = 0; rep < 300; ++rep) {
    const Index n = 25;
    const Index p = 10 + rep % 8;
    auto inst = gaussian_instance(n, p, 2000 + rep, 0.7);
    Vector u(p);
    for (Index j = 0; j < p; ++j) {
      u[j] = gauss(eng);
      if (unif(eng) < 0.4) u[j] = 0.0;  // mix in sparse directions
    }
    if (u.isZero()) u[0] = 1.0;
    const Index s = 1 + rep % 5;
    const double q = (rep % 3 == 0) ? 2.0 : 2.0 + (rep % 3);
    const double gamma = 0.5;
    const double lambda =
        lasso_lambda_min(gamma, inst.sigma, n, p, s) * (1.0 + 0.5 * (rep % 3));
    const auto ev = event_functionals(u, inst, s, NormOrder::finite(q), lambda, gamma, 0.1);
    CHECK(ev.H <= ev.H_tilde * (1.0 + 1e-12) + 1e-15);
    CHECK(ev.H_tilde <= ev.F * (1.0 + 1e-12) + 1e-15);
  }
}

TEST_CASE("minimax rate: frozen value, scaling, and regime guard") {
  CHECK(minimax_rate(100, 200, 4, NormOrder::finite(2.0), 1.0) ==
        doctest::Approx(0.443261683678079536).epsilon(1e-14));
  // q = inf drops the s^(1/q) factor.
  CHECK(minimax_rate(100, 200, 4, NormOrder::infinity(), 1.0) ==
        doctest::Approx(std::sqrt(std::log(std::numbers::e * 50.0) / 100.0))
            .epsilon(1e-14));
  // Linear in sigma.
  CHECK(minimax_rate(100, 200, 4, NormOrder::finite(2.0), 2.0) ==
        doctest::Approx(2.0 * minimax_rate(100, 200, 4, NormOrder::finite(2.0), 1.0))
            .epsilon(1e-15));
  CHECK_THROWS_AS(minimax_rate(0, 200, 4, NormOrder::finite(2.0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(minimax_rate(100, 200, 0, NormOrder::finite(2.0), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(minimax_rate(100, 4, 5, NormOrder::finite(2.0), 1.0), std::invalid_argument);

  CHECK(minimax_regime_ok(1, 2));
  CHECK(minimax_regime_ok(4, 8));
  CHECK_FALSE(minimax_regime_ok(3, 5));
  CHECK_FALSE(minimax_regime_ok(0, 10));
  CHECK_FALSE(minimax_regime_ok(1, 1));
}

}  // TEST_SUITE
