#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>

#include "slope/harness.hpp"
#include "slope/norms.hpp"

using namespace slope;

namespace {

bool bitwise_equal(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() && (a.array() == b.array()).all();
}

bool bitwise_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

TrialConfig small_config() {
  TrialConfig cfg;
  cfg.design.kind = DesignKind::IidGaussian;
  cfg.design.n = 40;
  cfg.design.p = 20;
  cfg.signal.kind = SignalKind::ExactSparse;
  cfg.signal.p = 20;
  cfg.signal.s = 3;
  cfg.signal.amplitude = 2.0;
  cfg.sigma = 0.5;
  cfg.bound.s = 3;
  cfg.re_search.restarts = 20;
  cfg.re_search.steps = 120;
  return cfg;
}

TrialConfig identity_config(Index n) {
  TrialConfig cfg;
  cfg.design.kind = DesignKind::ScaledIdentity;
  cfg.design.n = n;
  cfg.design.p = n;
  cfg.signal.kind = SignalKind::ExactSparse;
  cfg.signal.p = n;
  cfg.signal.s = 3;
  cfg.signal.amplitude = 5.0;
  cfg.sigma = 0.5;
  cfg.bound.s = 3;
  return cfg;
}

}  // namespace

TEST_SUITE("harness") {

TEST_CASE("design generator: scaled identity is exact, gaussians are normalized") {
  DesignSpec id;
  id.kind = DesignKind::ScaledIdentity;
  id.n = 6;
  id.p = 6;
  const Matrix X = gen_design(id, 42);
  CHECK(bitwise_equal(X, std::sqrt(6.0) * Matrix::Identity(6, 6)));

  DesignSpec rect = id;
  rect.p = 5;
  CHECK_THROWS_AS(gen_design(rect, 42), std::invalid_argument);

  DesignSpec gauss;
  gauss.n = 30;
  gauss.p = 10;
  const Matrix G = gen_design(gauss, 7);
  for (Index j = 0; j < 10; ++j)
    CHECK(G.col(j).norm() == doctest::Approx(std::sqrt(30.0)).epsilon(1e-12));

  DesignSpec raw = gauss;
  raw.normalize_columns = false;
  const Matrix R = gen_design(raw, 7);
  bool all_exact = true;
  for (Index j = 0; j < 10; ++j)
    if (std::abs(R.col(j).norm() - std::sqrt(30.0)) > 1e-6) all_exact = false;
  CHECK_FALSE(all_exact);

  CHECK(bitwise_equal(gen_design(gauss, 7), G));
  CHECK_FALSE(bitwise_equal(gen_design(gauss, 8), G));
}

TEST_CASE("design generator: anisotropic rows follow the covariance") {
  Matrix cov(2, 2);
  cov << 1.0, 0.9, 0.9, 1.0;
  DesignSpec spec;
  spec.kind = DesignKind::Anisotropic;
  spec.n = 4000;
  spec.p = 2;
  spec.covariance = cov;
  const Matrix X = gen_design(spec, 11);
  const double corr = X.col(0).dot(X.col(1)) / (X.col(0).norm() * X.col(1).norm());
  CHECK(corr > 0.8);
  CHECK(corr < 0.97);

  Matrix bad(2, 2);
  bad << 1.0, 2.0, 2.0, 1.0;  // indefinite
  DesignSpec bad_spec = spec;
  bad_spec.covariance = bad;
  CHECK_THROWS_AS(gen_design(bad_spec, 11), std::invalid_argument);

  DesignSpec missing = spec;
  missing.covariance.reset();
  CHECK_THROWS_AS(missing.validate(), std::invalid_argument);

  DesignSpec stray;
  stray.n = 10;
  stray.p = 2;
  stray.covariance = cov;  // covariance without the anisotropic kind
  CHECK_THROWS_AS(stray.validate(), std::invalid_argument);
}

TEST_CASE("signal generator: exact sparsity and lr-ball radius") {
  SignalSpec sp;
  sp.p = 10;
  sp.s = 3;
  sp.amplitude = 1.5;
  const Vector beta = gen_signal(sp, 3);
  int nonzero = 0;
  for (Index j = 0; j < 10; ++j) {
    if (beta[j] != 0.0) {
      ++nonzero;
      CHECK(std::abs(beta[j]) == 1.5);
    }
  }
  CHECK(nonzero == 3);
  CHECK(bitwise_equal(gen_signal(sp, 3), beta));
  CHECK_FALSE(bitwise_equal(gen_signal(sp, 4), beta));

  sp.s = 0;
  CHECK(gen_signal(sp, 3).isZero(0.0));
  sp.s = 10;
  const Vector full = gen_signal(sp, 3);
  CHECK((full.array().abs() == 1.5).all());

  SignalSpec ball;
  ball.kind = SignalKind::LrBall;
  ball.p = 15;
  ball.r = 0.5;
  ball.radius = 2.0;
  const Vector b = gen_signal(ball, 9);
  double total = 0.0;
  for (Index j = 0; j < 15; ++j) total += std::sqrt(std::abs(b[j]));
  CHECK(total == doctest::Approx(2.0).epsilon(1e-12));

  SignalSpec bad = sp;
  bad.s = 11;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = sp;
  bad.amplitude = 0.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = ball;
  bad.r = 1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("trial runner is deterministic and matches the context route") {
  const TrialConfig cfg = small_config();
  const TrialReport a = run_trial(cfg, 123);
  const TrialReport b = run_trial(cfg, 123);
  CHECK(a.lasso.err_l1 == b.lasso.err_l1);
  CHECK(a.lasso.err_l2 == b.lasso.err_l2);
  CHECK(a.slope.err_l1 == b.slope.err_l1);
  CHECK(a.slope.objective == b.slope.objective);
  CHECK(a.lasso.prediction.lhs == b.lasso.prediction.lhs);
  CHECK(a.slope.prediction.rhs == b.slope.prediction.rhs);
  CHECK(a.event_holds == b.event_holds);

  const TrialContext ctx = prepare_context(cfg, 123);
  const TrialReport c = run_trial(ctx, 0);
  CHECK(c.lasso.err_l2 == a.lasso.err_l2);
  CHECK(c.slope.err_lq == a.slope.err_lq);

  const TrialReport d = run_trial(cfg, 124);
  CHECK(d.lasso.err_l2 != a.lasso.err_l2);
}

TEST_CASE("generated problems reproduce the per-trial instances of a batch") {
  const TrialConfig cfg = small_config();
  const TrialContext ctx = prepare_context(cfg, 321);
  const ProblemInstance inst = gen_problem(cfg.design, cfg.signal, cfg.sigma, 321, 2);
  CHECK(bitwise_equal(inst.X, ctx.X));
  REQUIRE(inst.beta_star.has_value());

  // Solving the generated instance reproduces trial 2 of the batch exactly.
  const TrialReport rep = run_trial(ctx, 2);
  const FitResult fit = lasso_fit(inst, ctx.lambda, cfg.solver);
  const Vector u = fit.beta_hat - *inst.beta_star;
  CHECK(lq_norm(u, NormOrder::finite(1.0)) == rep.lasso.err_l1);
  CHECK(u.norm() == rep.lasso.err_l2);

  // Distinct trial indices get fresh noise and signal draws.
  const ProblemInstance other = gen_problem(cfg.design, cfg.signal, cfg.sigma, 321, 3);
  CHECK_FALSE(bitwise_equal(other.y, inst.y));
}

TEST_CASE("identity design: error bounds hold whenever the event does") {
  // With X = sqrt(n) I the cone constants are exact, so the inequality
  // chain behind each check carries no estimation slack: any trial whose
  // realized noise satisfies the event functional inequality must satisfy
  // every applicable bound.
  const TrialConfig cfg = identity_config(60);
  const SimulationReport rep = monte_carlo(cfg, 30, 5);
  CHECK(rep.re_label == "exact");
  CHECK(rep.theta.value == 1.0);
  CHECK(rep.nu.value == 1.0);
  int events = 0;
  for (const TrialReport& t : rep.trials) {
    for (const EstimatorTrial* e : {&t.lasso, &t.slope}) {
      if (!e->event_applicable || !e->event_holds) continue;
      ++events;
      for (const CheckResult* c :
           {&e->prediction, &e->norm_error, &e->lq_sparse, &e->lq_compressible}) {
        if (c->applicable) CHECK(c->holds);
      }
    }
  }
  // The event level is loose; most of the 60 estimator-trials must clear it.
  CHECK(events >= 40);
}

TEST_CASE("noiseless configuration disables bounds but keeps errors") {
  TrialConfig cfg = small_config();
  cfg.sigma = 0.0;
  const TrialReport rep = run_trial(cfg, 17);
  CHECK_FALSE(rep.lasso.prediction.applicable);
  CHECK_FALSE(rep.lasso.norm_error.applicable);
  CHECK_FALSE(rep.lasso.event_applicable);
  CHECK_FALSE(rep.slope.prediction.applicable);
  CHECK(rep.event_holds);  // vacuous
  CHECK(rep.lasso.err_l2 >= 0.0);
  CHECK(rep.lasso.converged);

  const SimulationReport sim = monte_carlo(cfg, 3, 17);
  CHECK(sim.lasso_prediction.applicable == 0);
  CHECK(sim.event_joint.applicable == 0);
  CHECK(sim.lasso_prediction.freq == 0.0);
}

TEST_CASE("zero target: errors equal the estimate norms, bounds stay positive") {
  TrialConfig cfg = small_config();
  cfg.signal.s = 0;
  cfg.bound.s = 1;
  const TrialReport rep = run_trial(cfg, 29);
  CHECK(rep.lasso.prediction.applicable);
  CHECK(rep.lasso.prediction.rhs > 0.0);
  CHECK(rep.slope.prediction.rhs > 0.0);
}

TEST_CASE("q below 2 swaps the sparse lq check onto the interpolated route") {
  TrialConfig cfg = small_config();
  cfg.bound.q = NormOrder::finite(1.5);
  const TrialContext ctx = prepare_context(cfg, 7);
  CHECK(ctx.q_eff().value() == 2.0);
  const TrialReport rep = run_trial(ctx, 0);
  CHECK(rep.lasso.lq_sparse.applicable);      // interpolated l1/l2 combination
  CHECK_FALSE(rep.slope.lq_sparse.applicable);  // defined for the l1 penalty only
  CHECK_FALSE(rep.lasso.lq_compressible.applicable);
  CHECK(rep.lasso.err_lq <= rep.lasso.err_l1 * (1.0 + 1e-12));  // norms shrink in q
}

TEST_CASE("score interval: frozen values, symmetry, and boundary cases") {
  const WilsonInterval empty = wilson_interval(0, 0);
  CHECK(empty.lo == 0.0);
  CHECK(empty.hi == 1.0);

  const WilsonInterval none = wilson_interval(0, 10);
  CHECK(none.lo == 0.0);
  CHECK(none.hi == doctest::Approx(0.2775327998628892).epsilon(1e-13));

  const WilsonInterval most = wilson_interval(95, 100);
  CHECK(most.lo == doctest::Approx(0.8882495307680808).epsilon(1e-13));
  CHECK(most.hi == doctest::Approx(0.9784563208456319).epsilon(1e-13));

  const WilsonInterval all = wilson_interval(10, 10);
  CHECK(all.hi == doctest::Approx(1.0).epsilon(1e-12));

  // The score interval is equivariant under success/failure exchange.
  for (int n : {7, 25, 160}) {
    for (int h = 0; h <= n; h += (n > 20 ? 13 : 1)) {
      const WilsonInterval a = wilson_interval(h, n);
      const WilsonInterval b = wilson_interval(n - h, n);
      CHECK(a.lo == doctest::Approx(1.0 - b.hi).epsilon(1e-12));
      const double phat = static_cast<double>(h) / n;
      CHECK(a.lo <= phat + 1e-15);
      CHECK(a.hi >= phat - 1e-15);
    }
  }

  // Wider sample, tighter interval at the same frequency.
  CHECK(wilson_interval(190, 200).hi - wilson_interval(190, 200).lo <
        wilson_interval(95, 100).hi - wilson_interval(95, 100).lo);
}

TEST_CASE("monte carlo: single-trial batches match the plain runner") {
  const TrialConfig cfg = small_config();
  const SimulationReport rep = monte_carlo(cfg, 1, 123);
  const TrialReport solo = run_trial(cfg, 123);
  REQUIRE(rep.trials.size() == 1);
  CHECK(rep.trials[0].lasso.err_l2 == solo.lasso.err_l2);
  CHECK(rep.trials[0].slope.err_l1 == solo.slope.err_l1);
  CHECK(rep.lambda > 0.0);
  CHECK(rep.event_target == doctest::Approx(0.95).epsilon(1e-15));
  CHECK_THROWS_AS(monte_carlo(cfg, 0, 1), std::invalid_argument);
}

TEST_CASE("monte carlo: tallies are consistent and reruns are identical") {
  const TrialConfig cfg = small_config();
  const SimulationReport a = monte_carlo(cfg, 12, 99);
  const SimulationReport b = monte_carlo(cfg, 12, 99);
  CHECK(a.lasso_prediction.hits == b.lasso_prediction.hits);
  CHECK(a.event_joint.hits == b.event_joint.hits);
  for (std::size_t i = 0; i < a.trials.size(); ++i)
    CHECK(a.trials[i].slope.err_l2 == b.trials[i].slope.err_l2);

  int pred_hits = 0, pred_app = 0;
  for (const TrialReport& t : a.trials) {
    if (t.lasso.prediction.applicable) {
      ++pred_app;
      if (t.lasso.prediction.holds) ++pred_hits;
    }
  }
  CHECK(a.lasso_prediction.hits == pred_hits);
  CHECK(a.lasso_prediction.applicable == pred_app);
  CHECK(a.lasso_prediction.freq ==
        doctest::Approx(static_cast<double>(pred_hits) / pred_app).epsilon(1e-15));
  const WilsonInterval w = wilson_interval(pred_hits, pred_app);
  CHECK(a.lasso_prediction.interval.lo == w.lo);
  CHECK(a.lasso_prediction.interval.hi == w.hi);
}

TEST_CASE("rate sweep: noiseless floor is flagged, noisy slopes are reproducible") {
  TrialConfig base = small_config();
  base.design.n = 100;
  base.design.p = 40;
  base.signal.p = 40;
  base.signal.s = 2;
  base.bound.s = 2;

  TrialConfig noiseless = base;
  noiseless.sigma = 0.0;
  const SweepReport quiet =
      rate_sweep(SweepAxis::S, {2, 4}, noiseless, WhichEstimator::Slope, 4, 31);
  CHECK(quiet.noise_floor);
  CHECK_FALSE(quiet.log_slope.has_value());

  const SweepReport a = rate_sweep(SweepAxis::S, {2, 4, 8}, base, WhichEstimator::Slope, 10, 31);
  CHECK_FALSE(a.noise_floor);
  REQUIRE(a.points.size() == 3);
  CHECK(a.points[0].s == 2);
  CHECK(a.points[2].s == 8);
  CHECK(a.points[0].n == 100);
  REQUIRE(a.log_slope.has_value());
  for (const SweepPoint& pt : a.points) {
    CHECK(pt.median_err_l2 > 0.0);
    CHECK(pt.predictor ==
          doctest::Approx(minimax_rate(pt.n, pt.p, pt.s, NormOrder::finite(2.0), base.sigma))
              .epsilon(1e-15));
  }

  const SweepReport b = rate_sweep(SweepAxis::S, {2, 4, 8}, base, WhichEstimator::Slope, 10, 31);
  CHECK(*a.log_slope == *b.log_slope);
  for (std::size_t i = 0; i < a.points.size(); ++i)
    CHECK(a.points[i].median_err_l2 == b.points[i].median_err_l2);

  // The n axis rescales the design, the p axis rescales design and signal.
  const SweepReport n_axis =
      rate_sweep(SweepAxis::N, {60, 120}, base, WhichEstimator::Lasso, 4, 31);
  CHECK(n_axis.points[1].n == 120);
  CHECK(n_axis.points[1].p == 40);
  const SweepReport p_axis =
      rate_sweep(SweepAxis::P, {30, 50}, base, WhichEstimator::Lasso, 4, 31);
  CHECK(p_axis.points[0].p == 30);

  CHECK_THROWS_AS(rate_sweep(SweepAxis::S, {}, base, WhichEstimator::Slope, 4, 31),
                  std::invalid_argument);
  CHECK_THROWS_AS(rate_sweep(SweepAxis::S, {2}, base, WhichEstimator::Slope, 0, 31),
                  std::invalid_argument);
}

TEST_CASE("trial config validation catches cross-field mismatches") {
  TrialConfig cfg = small_config();
  cfg.signal.p = 19;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.bound.s = 21;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.bound.tau = 0.6;  // exceeds 1 - gamma
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.bound.q = NormOrder::finite(1.0);  // q = 1 is admissible
  CHECK_NOTHROW(cfg.validate());
  cfg = small_config();
  cfg.lasso_lambda = -1.0;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = small_config();
  cfg.sigma = -0.1;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

}  // TEST_SUITE
