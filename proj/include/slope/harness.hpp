#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slope/bounds.hpp"
#include "slope/cones.hpp"
#include "slope/solvers.hpp"
#include "slope/weights.hpp"

namespace slope {

enum class DesignKind { IidGaussian, Anisotropic, ScaledIdentity };

struct DesignSpec {
  DesignKind kind = DesignKind::IidGaussian;
  Index n = 0;
  Index p = 0;
  bool normalize_columns = true;
  std::optional<Matrix> covariance;  // row covariance for the anisotropic kind

  void validate() const;
};

// Design draw; column normalization rescales to ||X e_j||_2 = sqrt(n)
// exactly, which the bound machinery assumes.
Matrix gen_design(const DesignSpec& spec, std::uint64_t seed);

enum class SignalKind { ExactSparse, LrBall };

struct SignalSpec {
  SignalKind kind = SignalKind::ExactSparse;
  Index p = 0;
  Index s = 0;             // ExactSparse: support size
  double amplitude = 1.0;  // ExactSparse: magnitude of the +-1 entries
  double r = 0.5;          // LrBall: exponent in (0,1)
  double radius = 1.0;     // LrBall: target value of sum_j |beta_j|^r

  void validate() const;
};

Vector gen_signal(const SignalSpec& spec, std::uint64_t seed);

// The user-facing slice of BoundParams; q may lie anywhere in [1, inf],
// values below 2 route the lq bound through interpolation.
struct BoundSettings {
  NormOrder q = NormOrder::finite(2.0);
  Index s = 1;
  double gamma = 0.5;
  double tau = 0.25;
  double delta0 = 0.1;
};

struct TrialConfig {
  DesignSpec design;
  SignalSpec signal;
  double sigma = 1.0;
  BoundSettings bound;
  double weight_A = default_weight_multiplier();
  std::optional<double> lasso_lambda;  // default: the minimal admissible level
  SolverConfig solver;
  RESearchConfig re_search;

  void validate() const;
};

// Everything (re)usable across trials of one configuration: the design,
// the tuning, and the cone constants, which are estimated once.
struct TrialContext {
  TrialConfig cfg;
  std::uint64_t master_seed = 0;
  Matrix X;
  WeightSchedule weights;
  double lambda = 0.0;
  REEstimate theta;
  REEstimate nu;
  std::string re_label;  // "exact" for the scaled identity design, else "estimated"

  NormOrder q_eff() const;  // max(q, 2): the level the bound constants live at
  BoundParams lasso_params() const;
  BoundParams slope_params() const;
};

TrialContext prepare_context(const TrialConfig& cfg, std::uint64_t master_seed);

struct CheckResult {
  bool applicable = false;
  bool holds = true;
  double lhs = 0.0;
  double rhs = 0.0;
  // Plug-in value of the cone constant at which a failed verdict flips;
  // the search only overestimates the constant, so a failure with the
  // estimate may still hold at the true value.
  std::optional<double> re_flip;
};

struct EstimatorTrial {
  std::string estimator;  // "lasso" | "slope"
  double err_l1 = 0.0, err_l2 = 0.0, err_lq = 0.0, err_linf = 0.0;
  double objective = 0.0;
  int iterations = 0;
  bool converged = false;
  double stationarity_residual = 0.0;
  CheckResult prediction;       // penalized prediction inequality
  CheckResult norm_error;       // l1 (lasso) / sorted-norm (slope) inequality
  CheckResult lq_sparse;        // lq inequality for exactly sparse targets
  CheckResult lq_compressible;  // lq inequality with approximation term
  bool event_applicable = false;
  bool event_holds = true;
  double event_lhs = 0.0, event_H = 0.0, event_G = 0.0;
};

struct TrialReport {
  int trial_index = 0;
  std::uint64_t master_seed = 0;
  EstimatorTrial lasso;
  EstimatorTrial slope;
  bool event_holds = true;  // conjunction over both realized error vectors
};

TrialReport run_trial(const TrialContext& ctx, int trial_index);
TrialReport run_trial(const TrialConfig& cfg, std::uint64_t seed);

// Fabricates y = X beta_star + sigma xi on the same (master seed, trial
// index) substreams the trial runner uses, so a generated problem equals
// the one trial `trial_index` of a batch at that seed would see.
ProblemInstance gen_problem(const DesignSpec& design, const SignalSpec& signal, double sigma,
                            std::uint64_t master_seed, int trial_index = 0);

struct WilsonInterval {
  double lo = 0.0, hi = 1.0;
};

// 95% score interval by default; exact at the 0/0 boundary cases.
WilsonInterval wilson_interval(int hits, int n, double z = 1.959963984540054);

struct CoverageStat {
  int hits = 0;
  int applicable = 0;
  double freq = 0.0;  // hits/applicable, 0 when nothing applied
  WilsonInterval interval;
};

struct SimulationReport {
  TrialConfig cfg;
  std::uint64_t master_seed = 0;
  int n_trials = 0;
  double lambda = 0.0;
  REEstimate theta;
  REEstimate nu;
  std::string re_label;
  std::vector<TrialReport> trials;
  CoverageStat lasso_prediction, lasso_norm, lasso_lq_sparse, lasso_lq_comp;
  CoverageStat slope_prediction, slope_norm, slope_lq_sparse, slope_lq_comp;
  CoverageStat event_joint, event_lasso, event_slope;
  double event_target = 0.0;  // 1 - delta0/2
  std::string note;
};

SimulationReport monte_carlo(const TrialConfig& cfg, int n_trials, std::uint64_t master_seed);

enum class SweepAxis { S, P, N };
enum class WhichEstimator { Lasso, Slope };

struct SweepPoint {
  Index axis_value = 0;
  Index n = 0, p = 0, s = 0;
  double median_err_l2 = 0.0;
  double predictor = 0.0;  // sigma * sqrt(s log(ep/s) / n)
  int trials = 0;
};

struct SweepReport {
  SweepAxis axis = SweepAxis::S;
  WhichEstimator estimator = WhichEstimator::Slope;
  std::vector<SweepPoint> points;
  // Least-squares slope of log median error against log predictor;
  // unset when the errors sit at the solver floor (noiseless runs) or
  // the grid is degenerate.
  std::optional<double> log_slope;
  bool noise_floor = false;
};

SweepReport rate_sweep(SweepAxis axis, const std::vector<Index>& grid, const TrialConfig& base,
                       WhichEstimator estimator, int trials_per_point,
                       std::uint64_t master_seed);

}  // namespace slope
