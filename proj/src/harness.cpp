#include "slope/harness.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "slope/parallel.hpp"
#include "slope/rng.hpp"

namespace slope {

namespace {

// Stream tags keep every randomness consumer on its own substream of the
// master seed; adding a consumer must not shift any existing draw.
constexpr std::uint64_t kStreamDesign = 0x01;
constexpr std::uint64_t kStreamTheta = 0x02;
constexpr std::uint64_t kStreamNu = 0x03;
constexpr std::uint64_t kStreamSignalBase = 0xA1'0000'0000ull;
constexpr std::uint64_t kStreamNoiseBase = 0xB2'0000'0000ull;
constexpr std::uint64_t kStreamSweepDesign = 0xC3'0000'0000ull;
constexpr std::uint64_t kStreamSweepTrial = 0xC4'0000'0000ull;

}  // namespace

void DesignSpec::validate() const {
  if (n < 1 || p < 1) throw std::invalid_argument("DesignSpec: n and p must be positive");
  if (kind == DesignKind::Anisotropic) {
    if (!covariance) throw std::invalid_argument("DesignSpec: anisotropic kind needs covariance");
    if (covariance->rows() != p || covariance->cols() != p)
      throw std::invalid_argument("DesignSpec: covariance must be p x p");
  } else if (covariance) {
    throw std::invalid_argument("DesignSpec: covariance only applies to the anisotropic kind");
  }
  if (kind == DesignKind::ScaledIdentity && n != p)
    throw std::invalid_argument("DesignSpec: scaled identity needs n == p");
}

Matrix gen_design(const DesignSpec& spec, std::uint64_t seed) {
  spec.validate();
  const double root_n = std::sqrt(static_cast<double>(spec.n));
  if (spec.kind == DesignKind::ScaledIdentity)
    return root_n * Matrix::Identity(spec.n, spec.p);

  auto eng = make_engine(seed, 0);
  Matrix X = gaussian_matrix(spec.n, spec.p, eng);
  if (spec.kind == DesignKind::Anisotropic) {
    Eigen::LLT<Matrix> llt(*spec.covariance);
    if (llt.info() != Eigen::Success)
      throw std::invalid_argument("gen_design: covariance must be symmetric positive definite");
    X = X * Matrix(llt.matrixL()).transpose();
  }
  if (spec.normalize_columns) {
    for (Index j = 0; j < spec.p; ++j) {
      const double c = X.col(j).norm();
      if (c > 0.0) X.col(j) *= root_n / c;
    }
  }
  return X;
}

void SignalSpec::validate() const {
  if (p < 1) throw std::invalid_argument("SignalSpec: p must be positive");
  if (kind == SignalKind::ExactSparse) {
    if (s < 0 || s > p) throw std::invalid_argument("SignalSpec: requires 0 <= s <= p");
    if (!(amplitude > 0.0)) throw std::invalid_argument("SignalSpec: amplitude must be positive");
  } else {
    if (!(r > 0.0) || !(r < 1.0)) throw std::invalid_argument("SignalSpec: r must lie in (0,1)");
    if (!(radius > 0.0)) throw std::invalid_argument("SignalSpec: radius must be positive");
  }
}

Vector gen_signal(const SignalSpec& spec, std::uint64_t seed) {
  spec.validate();
  auto eng = make_engine(seed, 0);
  if (spec.kind == SignalKind::ExactSparse) {
    Vector beta = Vector::Zero(spec.p);
    std::vector<Index> pool(static_cast<std::size_t>(spec.p));
    for (Index i = 0; i < spec.p; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (Index k = 0; k < spec.s; ++k) {
      const std::size_t remaining = pool.size() - static_cast<std::size_t>(k);
      std::size_t r = static_cast<std::size_t>(uniform01(eng) * static_cast<double>(remaining));
      if (r >= remaining) r = remaining - 1;
      std::swap(pool[static_cast<std::size_t>(k)], pool[static_cast<std::size_t>(k) + r]);
      beta[pool[static_cast<std::size_t>(k)]] =
          uniform01(eng) < 0.5 ? -spec.amplitude : spec.amplitude;
    }
    return beta;
  }
  Vector beta = gaussian_vector(spec.p, eng);
  double total = 0.0;
  for (Index i = 0; i < spec.p; ++i) total += std::pow(std::abs(beta[i]), spec.r);
  if (total <= 0.0) throw std::runtime_error("gen_signal: degenerate draw");
  return beta * std::pow(spec.radius / total, 1.0 / spec.r);
}

void TrialConfig::validate() const {
  design.validate();
  signal.validate();
  if (signal.p != design.p) throw std::invalid_argument("TrialConfig: signal/design p mismatch");
  if (!(sigma >= 0.0)) throw std::invalid_argument("TrialConfig: sigma must be non-negative");
  if (bound.s < 1 || bound.s > design.p)
    throw std::invalid_argument("TrialConfig: bound s out of range");
  if (!(bound.gamma > 0.0) || !(bound.gamma < 1.0))
    throw std::invalid_argument("TrialConfig: gamma must lie in (0,1)");
  if (!(bound.tau >= 0.0) || !(bound.tau < 1.0 - bound.gamma))
    throw std::invalid_argument("TrialConfig: tau must lie in [0, 1-gamma)");
  if (!(bound.delta0 > 0.0) || !(bound.delta0 < 1.0))
    throw std::invalid_argument("TrialConfig: delta0 must lie in (0,1)");
  if (!bound.q.is_inf() && bound.q.value() < 1.0)
    throw std::invalid_argument("TrialConfig: q must lie in [1, inf]");
  if (!(weight_A > 0.0)) throw std::invalid_argument("TrialConfig: weight_A must be positive");
  if (lasso_lambda && !(*lasso_lambda > 0.0))
    throw std::invalid_argument("TrialConfig: lasso_lambda must be positive");
}

NormOrder TrialContext::q_eff() const {
  const NormOrder& q = cfg.bound.q;
  if (q.is_inf() || q.value() >= 2.0) return q;
  return NormOrder::finite(2.0);
}

namespace {

BoundParams make_params(const TrialContext& ctx, double re_value) {
  BoundParams bp;
  bp.q = ctx.q_eff();
  bp.s = ctx.cfg.bound.s;
  bp.gamma = ctx.cfg.bound.gamma;
  bp.tau = ctx.cfg.bound.tau;
  bp.delta0 = ctx.cfg.bound.delta0;
  bp.re_constant = re_value;
  return bp;
}

}  // namespace

BoundParams TrialContext::lasso_params() const { return make_params(*this, theta.value); }
BoundParams TrialContext::slope_params() const { return make_params(*this, nu.value); }

TrialContext prepare_context(const TrialConfig& cfg, std::uint64_t master_seed) {
  cfg.validate();
  TrialContext ctx{cfg,
                   master_seed,
                   gen_design(cfg.design, derive_seed(master_seed, kStreamDesign)),
                   slope_weights({cfg.design.p, cfg.design.n,
                                  cfg.sigma > 0.0 ? cfg.sigma : 1.0, cfg.weight_A}),
                   0.0,
                   REEstimate{},
                   REEstimate{},
                   ""};
  const double sigma_for_tuning = cfg.sigma > 0.0 ? cfg.sigma : 1.0;
  ctx.lambda = cfg.lasso_lambda.value_or(lasso_lambda_min(
      cfg.bound.gamma, sigma_for_tuning, cfg.design.n, cfg.design.p, cfg.bound.s));

  const double c0 = (1.0 + cfg.bound.gamma + cfg.bound.tau) /
                    (1.0 - cfg.bound.gamma - cfg.bound.tau);
  const NormOrder qe = ctx.q_eff();
  if (cfg.design.kind == DesignKind::ScaledIdentity) {
    // For X = sqrt(n) I the ratio is ||d||_2/||d||_q >= 1 with equality on
    // one-sparse vectors, which both cones contain.
    REEstimate exact;
    exact.value = 1.0;
    exact.method = "exact-enumeration";
    exact.restarts = 0;
    exact.witness = Vector::Unit(cfg.design.p, 0);
    ctx.theta = exact;
    ctx.nu = exact;
    ctx.re_label = "exact";
  } else {
    RESearchConfig rs = cfg.re_search;
    rs.seed = derive_seed(master_seed, kStreamTheta);
    ctx.theta = estimate_theta_q(ctx.X, qe, cfg.bound.s, c0, rs);
    rs.seed = derive_seed(master_seed, kStreamNu);
    ctx.nu = estimate_nu_q(ctx.X, ctx.weights, qe, cfg.bound.s, c0, rs);
    ctx.re_label = "estimated";
  }
  if (!(ctx.theta.value > 0.0) || !(ctx.nu.value > 0.0))
    throw std::runtime_error("prepare_context: cone constant estimate vanished; bounds undefined");
  return ctx;
}

namespace {

std::optional<double> flip_value(bool holds, double lhs, double rhs, double a, double c_current,
                                 double pref, double m) {
  if (holds || !(a > 0.0)) return std::nullopt;
  const double c_needed = c_current + (lhs - rhs) / a;
  if (!(c_needed > 0.0)) return std::nullopt;
  return pref * std::sqrt(m / c_needed);
}

bool leq_slack(double lhs, double rhs) { return lhs <= rhs + 1e-12 * std::max(1.0, rhs); }

EstimatorTrial eval_estimator(const TrialContext& ctx, const ProblemInstance& inst,
                              const FitResult& fit, bool is_slope, double sigma_s_l1,
                              double sigma_s_star) {
  const TrialConfig& cfg = ctx.cfg;
  const Index n = cfg.design.n;
  const double sig = cfg.sigma;
  const double tau = cfg.bound.tau, gamma = cfg.bound.gamma;
  const Index s = cfg.bound.s;
  const NormOrder q_cfg = cfg.bound.q;
  const NormOrder qe = ctx.q_eff();
  const bool q_below_2 = !q_cfg.is_inf() && q_cfg.value() < 2.0;

  EstimatorTrial out;
  out.estimator = is_slope ? "slope" : "lasso";
  const Vector u = fit.beta_hat - *inst.beta_star;
  out.err_l1 = lq_norm(u, NormOrder::finite(1.0));
  out.err_l2 = u.norm();
  out.err_lq = lq_norm(u, q_cfg);
  out.err_linf = lq_norm(u, NormOrder::infinity());
  out.objective = fit.objective;
  out.iterations = fit.iterations;
  out.converged = fit.converged;
  out.stationarity_residual = fit.stationarity_residual;

  if (!(sig > 0.0)) return out;  // bounds and event need a noise level

  const BoundParams bp = is_slope ? ctx.slope_params() : ctx.lasso_params();
  const double pref = 1.0 + gamma + tau;
  // Branch-2 numerator of the constant: what multiplies 1/theta^2.
  const double m_branch =
      is_slope ? 1.0 : std::pow(static_cast<double>(s), 1.0 - 2.0 * qe.inv());

  BoundReport rep;
  double quad, unit;
  if (is_slope) {
    rep = slope_bound_rhs(bp, ctx.weights, sigma_s_star, cfg.design.p, ctx.re_label);
    const double Lam = capital_lambda_q(ctx.weights, s, qe);
    quad = Lam * Lam;
    unit = Lam;
  } else {
    rep = lasso_bound_rhs(bp, ctx.lambda, sigma_s_l1, sig, n, ctx.re_label);
    quad = ctx.lambda * ctx.lambda * static_cast<double>(s);
    unit = ctx.lambda * std::pow(static_cast<double>(s), qe.inv());
  }
  const double xu_sq = (inst.X * u).squaredNorm() / static_cast<double>(n);
  const double norm_lhs =
      is_slope ? sorted_l1_norm(u, ctx.weights) : out.err_l1;

  out.prediction.applicable = true;
  out.prediction.lhs = 2.0 * tau * (is_slope ? norm_lhs : ctx.lambda * out.err_l1) + xu_sq;
  out.prediction.rhs = rep.rhs_prediction;
  out.prediction.holds = leq_slack(out.prediction.lhs, out.prediction.rhs);
  out.prediction.re_flip = flip_value(out.prediction.holds, out.prediction.lhs,
                                      out.prediction.rhs, quad, rep.constant, pref, m_branch);

  if (tau > 0.0 && rep.rhs_l1) {
    out.norm_error.applicable = true;
    out.norm_error.lhs = norm_lhs;
    out.norm_error.rhs = *rep.rhs_l1;
    out.norm_error.holds = leq_slack(out.norm_error.lhs, out.norm_error.rhs);
    const double a = is_slope ? quad / (2.0 * tau)
                              : ctx.lambda * static_cast<double>(s) / (2.0 * tau);
    out.norm_error.re_flip = flip_value(out.norm_error.holds, out.norm_error.lhs,
                                        out.norm_error.rhs, a, rep.constant, pref, m_branch);
  }

  const bool exactly_sparse = is_slope ? sigma_s_star == 0.0 : sigma_s_l1 == 0.0;
  if (!q_below_2) {
    if (exactly_sparse) {
      out.lq_sparse.applicable = true;
      out.lq_sparse.lhs = out.err_lq;
      out.lq_sparse.rhs = rep.rhs_lq_sparse;
      out.lq_sparse.holds = leq_slack(out.lq_sparse.lhs, out.lq_sparse.rhs);
      out.lq_sparse.re_flip =
          flip_value(out.lq_sparse.holds, out.lq_sparse.lhs, out.lq_sparse.rhs,
                     unit / (1.0 + gamma), rep.constant, pref, m_branch);
    }
    if (tau > 0.0 && rep.rhs_lq_compressible) {
      out.lq_compressible.applicable = true;
      out.lq_compressible.lhs = out.err_lq;
      out.lq_compressible.rhs = *rep.rhs_lq_compressible;
      out.lq_compressible.holds = leq_slack(out.lq_compressible.lhs, out.lq_compressible.rhs);
      const double coef_main =
          std::max(2.0 / (1.0 + gamma), (1.0 - gamma - tau) / (4.0 * tau));
      out.lq_compressible.re_flip =
          flip_value(out.lq_compressible.holds, out.lq_compressible.lhs,
                     out.lq_compressible.rhs, coef_main * unit, rep.constant, pref, m_branch);
    }
  } else if (!is_slope && exactly_sparse && tau > 0.0 && rep.rhs_l1) {
    // Interpolated route: the lq bound for q in [1,2) combines the l1 and
    // l2 bounds; defined for the l1-penalized estimator only.
    out.lq_sparse.applicable = true;
    out.lq_sparse.lhs = out.err_lq;
    out.lq_sparse.rhs =
        interpolated_lq_bound(*rep.rhs_l1, rep.rhs_lq_sparse, q_cfg.value());
    out.lq_sparse.holds = leq_slack(out.lq_sparse.lhs, out.lq_sparse.rhs);
  }

  const EventFunctionals ev =
      event_functionals(u, inst, s, qe, ctx.lambda, gamma, cfg.bound.delta0);
  out.event_applicable = true;
  out.event_lhs = ev.lhs;
  out.event_H = ev.H;
  out.event_G = ev.G;
  out.event_holds = leq_slack(ev.lhs, std::max(ev.H, ev.G));
  return out;
}

}  // namespace

namespace {

ProblemInstance fabricate(const Matrix& X, const SignalSpec& signal, double sigma,
                          std::uint64_t master_seed, int trial_index) {
  const Vector beta_star = gen_signal(
      signal,
      derive_seed(master_seed, kStreamSignalBase + static_cast<std::uint64_t>(trial_index)));
  auto noise_eng =
      make_engine(master_seed, kStreamNoiseBase + static_cast<std::uint64_t>(trial_index));
  const Vector f = X * beta_star;
  Vector y = f;
  if (sigma > 0.0) y += sigma * gaussian_vector(X.rows(), noise_eng);
  return ProblemInstance::make(X, y, sigma, beta_star, f);
}

}  // namespace

ProblemInstance gen_problem(const DesignSpec& design, const SignalSpec& signal, double sigma,
                            std::uint64_t master_seed, int trial_index) {
  const Matrix X = gen_design(design, derive_seed(master_seed, kStreamDesign));
  return fabricate(X, signal, sigma, master_seed, trial_index);
}

TrialReport run_trial(const TrialContext& ctx, int trial_index) {
  const TrialConfig& cfg = ctx.cfg;
  const ProblemInstance inst =
      fabricate(ctx.X, cfg.signal, cfg.sigma, ctx.master_seed, trial_index);
  const Vector& beta_star = *inst.beta_star;

  const FitResult lasso = lasso_fit(inst, ctx.lambda, cfg.solver);
  const FitResult slope = slope_fit(inst, ctx.weights, cfg.solver);

  const double sigma_s_l1 = best_s_term_error_l1(beta_star, cfg.bound.s);
  const double sigma_s_star = best_s_term_error_star(beta_star, ctx.weights, cfg.bound.s);

  TrialReport rep;
  rep.trial_index = trial_index;
  rep.master_seed = ctx.master_seed;
  rep.lasso = eval_estimator(ctx, inst, lasso, false, sigma_s_l1, sigma_s_star);
  rep.slope = eval_estimator(ctx, inst, slope, true, sigma_s_l1, sigma_s_star);
  rep.event_holds = (!rep.lasso.event_applicable || rep.lasso.event_holds) &&
                    (!rep.slope.event_applicable || rep.slope.event_holds);
  return rep;
}

TrialReport run_trial(const TrialConfig& cfg, std::uint64_t seed) {
  return run_trial(prepare_context(cfg, seed), 0);
}

WilsonInterval wilson_interval(int hits, int n, double z) {
  WilsonInterval w;
  if (n <= 0) return w;
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(hits) / nn;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / nn;
  const double center = (phat + z2 / (2.0 * nn)) / denom;
  const double half =
      z * std::sqrt(phat * (1.0 - phat) / nn + z2 / (4.0 * nn * nn)) / denom;
  w.lo = std::max(0.0, center - half);
  w.hi = std::min(1.0, center + half);
  return w;
}

namespace {

void tally(CoverageStat& stat, const CheckResult& check) {
  if (!check.applicable) return;
  ++stat.applicable;
  if (check.holds) ++stat.hits;
}

void finalize(CoverageStat& stat) {
  stat.freq = stat.applicable > 0
                  ? static_cast<double>(stat.hits) / static_cast<double>(stat.applicable)
                  : 0.0;
  stat.interval = wilson_interval(stat.hits, stat.applicable);
}

}  // namespace

SimulationReport monte_carlo(const TrialConfig& cfg, int n_trials, std::uint64_t master_seed) {
  if (n_trials < 1) throw std::invalid_argument("monte_carlo: n_trials must be positive");
  const TrialContext ctx = prepare_context(cfg, master_seed);

  SimulationReport rep;
  rep.cfg = cfg;
  rep.master_seed = master_seed;
  rep.n_trials = n_trials;
  rep.lambda = ctx.lambda;
  rep.theta = ctx.theta;
  rep.nu = ctx.nu;
  rep.re_label = ctx.re_label;
  rep.event_target = 1.0 - cfg.bound.delta0 / 2.0;
  rep.note =
      "Inequality and event indicators are evaluated at the realized error vectors only; "
      "the underlying event quantifies over all directions simultaneously, so these "
      "frequencies upper-bound the probability of the full event.";

  rep.trials.resize(static_cast<std::size_t>(n_trials));
  parallel_for(n_trials,
               [&](int i) { rep.trials[static_cast<std::size_t>(i)] = run_trial(ctx, i); });

  for (const TrialReport& t : rep.trials) {
    tally(rep.lasso_prediction, t.lasso.prediction);
    tally(rep.lasso_norm, t.lasso.norm_error);
    tally(rep.lasso_lq_sparse, t.lasso.lq_sparse);
    tally(rep.lasso_lq_comp, t.lasso.lq_compressible);
    tally(rep.slope_prediction, t.slope.prediction);
    tally(rep.slope_norm, t.slope.norm_error);
    tally(rep.slope_lq_sparse, t.slope.lq_sparse);
    tally(rep.slope_lq_comp, t.slope.lq_compressible);
    if (t.lasso.event_applicable) {
      ++rep.event_lasso.applicable;
      if (t.lasso.event_holds) ++rep.event_lasso.hits;
    }
    if (t.slope.event_applicable) {
      ++rep.event_slope.applicable;
      if (t.slope.event_holds) ++rep.event_slope.hits;
    }
    if (t.lasso.event_applicable && t.slope.event_applicable) {
      ++rep.event_joint.applicable;
      if (t.event_holds) ++rep.event_joint.hits;
    }
  }
  for (CoverageStat* s :
       {&rep.lasso_prediction, &rep.lasso_norm, &rep.lasso_lq_sparse, &rep.lasso_lq_comp,
        &rep.slope_prediction, &rep.slope_norm, &rep.slope_lq_sparse, &rep.slope_lq_comp,
        &rep.event_joint, &rep.event_lasso, &rep.event_slope})
    finalize(*s);
  return rep;
}

SweepReport rate_sweep(SweepAxis axis, const std::vector<Index>& grid, const TrialConfig& base,
                       WhichEstimator estimator, int trials_per_point,
                       std::uint64_t master_seed) {
  if (grid.empty()) throw std::invalid_argument("rate_sweep: empty grid");
  if (trials_per_point < 1)
    throw std::invalid_argument("rate_sweep: trials_per_point must be positive");

  SweepReport rep;
  rep.axis = axis;
  rep.estimator = estimator;
  rep.noise_floor = !(base.sigma > 0.0);

  for (std::size_t pt = 0; pt < grid.size(); ++pt) {
    TrialConfig cfg = base;
    const Index v = grid[pt];
    switch (axis) {
      case SweepAxis::S:
        cfg.signal.s = v;
        cfg.bound.s = v;
        break;
      case SweepAxis::P:
        cfg.design.p = v;
        cfg.signal.p = v;
        break;
      case SweepAxis::N:
        cfg.design.n = v;
        break;
    }
    cfg.validate();

    const Matrix X = gen_design(cfg.design, derive_seed(master_seed, kStreamSweepDesign + pt));
    const double sigma_for_tuning = cfg.sigma > 0.0 ? cfg.sigma : 1.0;
    const WeightSchedule w = slope_weights(
        {cfg.design.p, cfg.design.n, sigma_for_tuning, cfg.weight_A});
    const double lambda = cfg.lasso_lambda.value_or(lasso_lambda_min(
        cfg.bound.gamma, sigma_for_tuning, cfg.design.n, cfg.design.p, cfg.bound.s));

    std::vector<double> errs(static_cast<std::size_t>(trials_per_point));
    parallel_for(trials_per_point, [&](int t) {
      const std::uint64_t tag =
          kStreamSweepTrial + pt * 0x100000ull + static_cast<std::uint64_t>(t);
      const Vector beta_star = gen_signal(cfg.signal, derive_seed(master_seed, 2 * tag));
      auto noise_eng = make_engine(master_seed, 2 * tag + 1);
      Vector y = X * beta_star;
      if (cfg.sigma > 0.0) y += cfg.sigma * gaussian_vector(cfg.design.n, noise_eng);
      const ProblemInstance inst = ProblemInstance::make(X, y, cfg.sigma, beta_star);
      const FitResult fit = estimator == WhichEstimator::Lasso
                                ? lasso_fit(inst, lambda, cfg.solver)
                                : slope_fit(inst, w, cfg.solver);
      errs[static_cast<std::size_t>(t)] = (fit.beta_hat - beta_star).norm();
    });
    std::sort(errs.begin(), errs.end());
    const std::size_t mid = errs.size() / 2;
    const double median =
        errs.size() % 2 == 1 ? errs[mid] : 0.5 * (errs[mid - 1] + errs[mid]);

    SweepPoint point;
    point.axis_value = v;
    point.n = cfg.design.n;
    point.p = cfg.design.p;
    point.s = cfg.bound.s;
    point.median_err_l2 = median;
    point.predictor = minimax_rate(cfg.design.n, cfg.design.p, cfg.bound.s,
                                   NormOrder::finite(2.0), sigma_for_tuning);
    point.trials = trials_per_point;
    rep.points.push_back(point);
  }

  // Log-log regression of the medians on the predictor.
  if (!rep.noise_floor && rep.points.size() >= 2) {
    std::vector<double> xs, ys;
    for (const SweepPoint& point : rep.points) {
      if (point.median_err_l2 > 0.0 && point.predictor > 0.0) {
        xs.push_back(std::log(point.predictor));
        ys.push_back(std::log(point.median_err_l2));
      }
    }
    if (xs.size() >= 2) {
      const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
      const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
      double sxx = 0.0, sxy = 0.0;
      for (std::size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xbar) * (xs[i] - xbar);
        sxy += (xs[i] - xbar) * (ys[i] - ybar);
      }
      if (sxx > 0.0) rep.log_slope = sxy / sxx;
    }
  }
  return rep;
}

}  // namespace slope
