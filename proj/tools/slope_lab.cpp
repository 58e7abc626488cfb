// slope_lab: weights | solve | bounds | re | simulate | sweep.
// JSON configs are schema-checked (unknown keys rejected) before any
// computation; every output file is written atomically.  Exit codes:
// 0 success, 1 configuration/validation error, 2 numerical failure.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "slope/bounds.hpp"
#include "slope/cones.hpp"
#include "slope/harness.hpp"
#include "slope/io.hpp"
#include "slope/report_io.hpp"
#include "slope/solvers.hpp"
#include "slope/weights.hpp"

namespace {

using nlohmann::json;
using namespace slope;

// ---------------------------------------------------------------------------
// config plumbing

json load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  if (!j.is_object())
    throw std::invalid_argument("config " + path + ": top level must be a JSON object");
  return j;
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (const auto& item : obj.items()) {
    bool known = false;
    for (const char* a : allowed)
      if (item.key() == a) {
        known = true;
        break;
      }
    if (!known) throw std::invalid_argument(where + ": unknown key '" + item.key() + "'");
  }
}

const json* find_key(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return nullptr;
  return &*it;
}

double get_number(const json& obj, const std::string& where, const char* key,
                  std::optional<double> fallback = std::nullopt) {
  const json* v = find_key(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw std::invalid_argument(where + ": missing key '" + key + "'");
  }
  if (!v->is_number())
    throw std::invalid_argument(where + ": '" + key + "' must be a number");
  return v->get<double>();
}

Index get_integer(const json& obj, const std::string& where, const char* key,
                  std::optional<Index> fallback = std::nullopt) {
  const json* v = find_key(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw std::invalid_argument(where + ": missing key '" + key + "'");
  }
  if (!v->is_number_integer())
    throw std::invalid_argument(where + ": '" + key + "' must be an integer");
  return v->get<Index>();
}

bool get_bool(const json& obj, const std::string& where, const char* key, bool fallback) {
  const json* v = find_key(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean())
    throw std::invalid_argument(where + ": '" + key + "' must be a boolean");
  return v->get<bool>();
}

std::string get_string(const json& obj, const std::string& where, const char* key,
                       std::optional<std::string> fallback = std::nullopt) {
  const json* v = find_key(obj, key);
  if (!v) {
    if (fallback) return *fallback;
    throw std::invalid_argument(where + ": missing key '" + key + "'");
  }
  if (!v->is_string())
    throw std::invalid_argument(where + ": '" + key + "' must be a string");
  return v->get<std::string>();
}

json q_to_json(const NormOrder& q) {
  if (q.is_inf()) return json("inf");
  return json(q.value());
}

// q is a number >= 1 or the string "inf".
NormOrder parse_q(const json& obj, const std::string& where,
                  NormOrder fallback = NormOrder::finite(2.0)) {
  const json* v = find_key(obj, "q");
  if (!v) return fallback;
  if (v->is_string()) {
    const std::string s = v->get<std::string>();
    if (s == "inf" || s == "infinity") return NormOrder::infinity();
    throw std::invalid_argument(where + ": q must be a number or \"inf\"");
  }
  if (!v->is_number()) throw std::invalid_argument(where + ": q must be a number or \"inf\"");
  return NormOrder::finite(v->get<double>());
}

DesignSpec parse_design(const json& j, const std::string& where) {
  check_keys(j, where, {"kind", "n", "p", "normalize_columns", "covariance_csv"});
  DesignSpec spec;
  const std::string kind = get_string(j, where, "kind", std::string("iid-gaussian"));
  if (kind == "iid-gaussian")
    spec.kind = DesignKind::IidGaussian;
  else if (kind == "anisotropic")
    spec.kind = DesignKind::Anisotropic;
  else if (kind == "scaled-identity")
    spec.kind = DesignKind::ScaledIdentity;
  else
    throw std::invalid_argument(where + ": unknown design kind '" + kind + "'");
  spec.n = get_integer(j, where, "n");
  spec.p = get_integer(j, where, "p");
  spec.normalize_columns = get_bool(j, where, "normalize_columns", true);
  if (const json* cov = find_key(j, "covariance_csv")) {
    if (!cov->is_string())
      throw std::invalid_argument(where + ": 'covariance_csv' must be a path string");
    spec.covariance = read_matrix_csv(cov->get<std::string>());
  }
  spec.validate();
  return spec;
}

SignalSpec parse_signal(const json& j, const std::string& where, Index p) {
  check_keys(j, where, {"kind", "s", "amplitude", "r", "radius"});
  SignalSpec spec;
  spec.p = p;
  const std::string kind = get_string(j, where, "kind", std::string("exact-sparse"));
  if (kind == "exact-sparse") {
    spec.kind = SignalKind::ExactSparse;
    spec.s = get_integer(j, where, "s");
    spec.amplitude = get_number(j, where, "amplitude", 1.0);
  } else if (kind == "lr-ball") {
    spec.kind = SignalKind::LrBall;
    spec.s = 0;
    spec.r = get_number(j, where, "r", 0.5);
    spec.radius = get_number(j, where, "radius", 1.0);
  } else {
    throw std::invalid_argument(where + ": unknown signal kind '" + kind + "'");
  }
  spec.validate();
  return spec;
}

BoundSettings parse_bound(const json& j, const std::string& where,
                          std::optional<Index> default_s) {
  check_keys(j, where, {"q", "s", "gamma", "tau", "delta0"});
  BoundSettings b;
  b.q = parse_q(j, where);
  if (find_key(j, "s"))
    b.s = get_integer(j, where, "s");
  else if (default_s)
    b.s = *default_s;
  else
    throw std::invalid_argument(where + ": missing key 's'");
  b.gamma = get_number(j, where, "gamma", 0.5);
  b.tau = get_number(j, where, "tau", 0.25);
  b.delta0 = get_number(j, where, "delta0", 0.1);
  return b;
}

SolverConfig parse_solver(const json* j, const std::string& where) {
  SolverConfig cfg;
  if (!j) return cfg;
  check_keys(*j, where, {"max_iter", "tol", "step"});
  cfg.max_iter = static_cast<int>(get_integer(*j, where, "max_iter", cfg.max_iter));
  cfg.tol = get_number(*j, where, "tol", cfg.tol);
  if (find_key(*j, "step")) cfg.step = get_number(*j, where, "step");
  return cfg;
}

RESearchConfig parse_search(const json* j, const std::string& where) {
  RESearchConfig cfg;
  if (!j) return cfg;
  check_keys(*j, where, {"restarts", "steps", "step", "enumeration_budget"});
  cfg.restarts = static_cast<int>(get_integer(*j, where, "restarts", cfg.restarts));
  cfg.steps = static_cast<int>(get_integer(*j, where, "steps", cfg.steps));
  cfg.step = get_number(*j, where, "step", cfg.step);
  cfg.enumeration_budget = get_number(*j, where, "enumeration_budget", cfg.enumeration_budget);
  return cfg;
}

// Weight schedule from an explicit array or an {A, sigma, n} block.
WeightSchedule parse_weights(const json& v, const std::string& where, Index p,
                             std::optional<Index> default_n) {
  if (v.is_array()) {
    if (static_cast<Index>(v.size()) != p)
      throw std::invalid_argument(where + ": weight array must have length p");
    Vector vals(p);
    for (Index i = 0; i < p; ++i) {
      if (!v[i].is_number())
        throw std::invalid_argument(where + ": weight entries must be numbers");
      vals[i] = v[i].get<double>();
    }
    return WeightSchedule(vals);
  }
  if (!v.is_object())
    throw std::invalid_argument(where + ": weights must be an array or an {A, sigma, n} block");
  check_keys(v, where, {"A", "sigma", "n"});
  SlopeWeightConfig cfg;
  cfg.p = p;
  if (find_key(v, "n"))
    cfg.n = get_integer(v, where, "n");
  else if (default_n)
    cfg.n = *default_n;
  else
    throw std::invalid_argument(where + ": missing key 'n'");
  cfg.sigma = get_number(v, where, "sigma", 1.0);
  cfg.A = get_number(v, where, "A", default_weight_multiplier());
  return slope_weights(cfg);
}

TrialConfig parse_trial_config(const json& j, const std::string& where) {
  TrialConfig cfg;
  const json* design = find_key(j, "design");
  if (!design) throw std::invalid_argument(where + ": missing key 'design'");
  cfg.design = parse_design(*design, where + ".design");
  const json* signal = find_key(j, "signal");
  if (!signal) throw std::invalid_argument(where + ": missing key 'signal'");
  cfg.signal = parse_signal(*signal, where + ".signal", cfg.design.p);
  cfg.sigma = get_number(j, where, "sigma", 1.0);
  const std::optional<Index> default_s =
      cfg.signal.kind == SignalKind::ExactSparse ? std::optional<Index>(cfg.signal.s)
                                                 : std::nullopt;
  if (const json* bound = find_key(j, "bound"))
    cfg.bound = parse_bound(*bound, where + ".bound", default_s);
  else if (default_s)
    cfg.bound.s = *default_s;
  else
    throw std::invalid_argument(where + ": missing key 'bound'");
  cfg.weight_A = get_number(j, where, "weight_A", default_weight_multiplier());
  if (find_key(j, "lasso_lambda")) cfg.lasso_lambda = get_number(j, where, "lasso_lambda");
  cfg.solver = parse_solver(find_key(j, "solver"), where + ".solver");
  cfg.re_search = parse_search(find_key(j, "re_search"), where + ".re_search");
  cfg.validate();
  return cfg;
}

// Tuning sanity warnings; these do not block the run.
void warn_tuning(const TrialConfig& cfg) {
  const double sig = cfg.sigma > 0.0 ? cfg.sigma : 1.0;
  if (cfg.lasso_lambda) {
    const double min_lambda = lasso_lambda_min(cfg.bound.gamma, sig, cfg.design.n,
                                               cfg.design.p, cfg.bound.s);
    if (*cfg.lasso_lambda < min_lambda * (1.0 - 1e-12))
      std::cerr << "warning: lasso lambda " << format_double(*cfg.lasso_lambda)
                << " is below the admissible tuning threshold "
                << format_double(min_lambda) << "; bounds are not guaranteed\n";
  }
  if (cfg.weight_A * cfg.bound.gamma <= k4PlusSqrt2)
    std::cerr << "warning: weight multiplier A = " << format_double(cfg.weight_A)
              << " does not exceed (4+sqrt 2)/gamma; bounds are not guaranteed\n";
}

// stdout always; optionally also an atomic file under out_dir.
void emit(const std::string& text, const std::optional<std::string>& out_dir,
          const char* filename) {
  std::cout << text;
  if (out_dir) {
    std::filesystem::create_directories(*out_dir);
    write_file_atomic(std::filesystem::path(*out_dir) / filename, text);
  }
}

void write_out(const std::string& text, const std::string& out_dir, const char* filename) {
  std::filesystem::create_directories(out_dir);
  write_file_atomic(std::filesystem::path(out_dir) / filename, text);
}

// ---------------------------------------------------------------------------
// subcommands

struct CommonOpts {
  std::string config;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool strict = false;
  bool randomized = false;
};

int run_weights(Index p, Index n, double sigma, double A,
                const std::optional<std::string>& out_dir) {
  SlopeWeightConfig cfg;
  cfg.p = p;
  cfg.n = n;
  cfg.sigma = sigma;
  cfg.A = A;
  const WeightSchedule w = slope_weights(cfg);
  std::string csv = "j,lambda_j\n";
  for (Index j = 0; j < w.size(); ++j)
    csv += std::to_string(j + 1) + "," + format_double(w[j]) + "\n";
  emit(csv, out_dir, "weights.csv");
  return 0;
}

int run_solve(const CommonOpts& opts) {
  const json cfg = load_config(opts.config);
  check_keys(cfg, "solve config", {"penalty", "data", "generate", "solver"});
  const SolverConfig solver = parse_solver(find_key(cfg, "solver"), "solve config.solver");

  const json* data = find_key(cfg, "data");
  const json* generate = find_key(cfg, "generate");
  if (static_cast<bool>(data) == static_cast<bool>(generate))
    throw std::invalid_argument("solve config: exactly one of 'data' and 'generate' required");

  ProblemInstance inst;
  if (data) {
    check_keys(*data, "solve config.data", {"x_csv", "y_file", "sigma"});
    Matrix X = read_matrix_csv(get_string(*data, "solve config.data", "x_csv"));
    Vector y = read_vector_file(get_string(*data, "solve config.data", "y_file"));
    inst = ProblemInstance::make(std::move(X), std::move(y),
                                 get_number(*data, "solve config.data", "sigma", 0.0));
  } else {
    check_keys(*generate, "solve config.generate", {"design", "signal", "sigma"});
    const json* design = find_key(*generate, "design");
    if (!design) throw std::invalid_argument("solve config.generate: missing key 'design'");
    const DesignSpec dspec = parse_design(*design, "solve config.generate.design");
    const json* signal = find_key(*generate, "signal");
    if (!signal) throw std::invalid_argument("solve config.generate: missing key 'signal'");
    const SignalSpec sspec = parse_signal(*signal, "solve config.generate.signal", dspec.p);
    const double sigma = get_number(*generate, "solve config.generate", "sigma", 1.0);
    inst = gen_problem(dspec, sspec, sigma, opts.seed.value_or(0));
  }

  const json* penalty = find_key(cfg, "penalty");
  if (!penalty) throw std::invalid_argument("solve config: missing key 'penalty'");
  check_keys(*penalty, "solve config.penalty", {"kind", "lambda", "auto", "A", "weights"});
  const std::string kind = get_string(*penalty, "solve config.penalty", "kind");

  json out;
  out["n"] = inst.n();
  out["p"] = inst.p();
  FitResult fit;
  if (kind == "lasso") {
    double lambda;
    if (const json* aut = find_key(*penalty, "auto")) {
      if (find_key(*penalty, "lambda"))
        throw std::invalid_argument("solve config.penalty: give 'lambda' or 'auto', not both");
      check_keys(*aut, "solve config.penalty.auto", {"s", "gamma"});
      if (!(inst.sigma > 0.0))
        throw std::invalid_argument("solve config.penalty.auto: needs a positive sigma");
      lambda = lasso_lambda_min(get_number(*aut, "solve config.penalty.auto", "gamma", 0.5),
                                inst.sigma, inst.n(), inst.p(),
                                get_integer(*aut, "solve config.penalty.auto", "s"));
    } else {
      lambda = get_number(*penalty, "solve config.penalty", "lambda");
      if (!(lambda >= 0.0))
        throw std::invalid_argument("solve config.penalty: lambda must be nonnegative");
    }
    fit = lasso_fit(inst, lambda, solver);
    out["estimator"] = "lasso";
    out["lambda"] = lambda;
    out["kkt_violation"] = lasso_kkt_violation(inst, lambda, fit.beta_hat);
  } else if (kind == "slope") {
    WeightSchedule w = [&] {
      if (const json* wj = find_key(*penalty, "weights")) {
        if (find_key(*penalty, "A"))
          throw std::invalid_argument("solve config.penalty: give 'weights' or 'A', not both");
        return parse_weights(*wj, "solve config.penalty.weights", inst.p(), inst.n());
      }
      SlopeWeightConfig wc;
      wc.p = inst.p();
      wc.n = inst.n();
      wc.sigma = inst.sigma > 0.0 ? inst.sigma : 1.0;
      wc.A = get_number(*penalty, "solve config.penalty", "A", default_weight_multiplier());
      return slope_weights(wc);
    }();
    fit = slope_fit(inst, w, solver);
    out["estimator"] = "slope";
    out["weights"] = std::vector<double>(w.values().begin(), w.values().end());
  } else {
    throw std::invalid_argument("solve config.penalty: kind must be 'lasso' or 'slope'");
  }

  out["objective"] = fit.objective;
  out["iterations"] = fit.iterations;
  out["converged"] = fit.converged;
  out["stationarity_residual"] = fit.stationarity_residual;
  out["beta_hat"] = std::vector<double>(fit.beta_hat.begin(), fit.beta_hat.end());
  if (inst.beta_star) {
    const Vector u = fit.beta_hat - *inst.beta_star;
    out["errors"] = {{"l1", lq_norm(u, NormOrder::finite(1.0))},
                     {"l2", lq_norm(u, NormOrder::finite(2.0))},
                     {"linf", lq_norm(u, NormOrder::infinity())}};
  }
  emit(out.dump(2) + "\n", opts.out_dir, "solution.json");
  if (opts.strict && !fit.converged)
    throw std::runtime_error("solver did not converge within the iteration budget");
  return 0;
}

int run_bounds(const CommonOpts& opts) {
  const json cfg = load_config(opts.config);
  check_keys(cfg, "bounds config",
             {"estimator", "q", "s", "gamma", "tau", "delta0", "re_constant", "re_label",
              "lambda", "sigma", "n", "sigma_s_l1", "p", "weights", "sigma_s_star"});
  const std::string estimator = get_string(cfg, "bounds config", "estimator");

  BoundParams params;
  params.q = parse_q(cfg, "bounds config");
  params.s = get_integer(cfg, "bounds config", "s");
  params.gamma = get_number(cfg, "bounds config", "gamma", 0.5);
  params.tau = get_number(cfg, "bounds config", "tau", 0.25);
  params.delta0 = get_number(cfg, "bounds config", "delta0", 0.1);
  params.re_constant = get_number(cfg, "bounds config", "re_constant");
  params.validate();
  const std::string re_label =
      get_string(cfg, "bounds config", "re_label", std::string("estimated"));

  BoundReport rep;
  json echo;
  if (estimator == "lasso") {
    const double lambda = get_number(cfg, "bounds config", "lambda");
    const double sigma = get_number(cfg, "bounds config", "sigma", 1.0);
    const Index n = get_integer(cfg, "bounds config", "n");
    const double sigma_s = get_number(cfg, "bounds config", "sigma_s_l1", 0.0);
    rep = lasso_bound_rhs(params, lambda, sigma_s, sigma, n, re_label);
    echo["lambda"] = lambda;
    echo["sigma"] = sigma;
    echo["n"] = n;
    echo["sigma_s_l1"] = sigma_s;
    if (const json* pj = find_key(cfg, "p")) {
      const Index p = pj->get<Index>();
      if (!lambda_admissible(lambda, params.gamma, sigma, n, p, params.s))
        std::cerr << "warning: lambda below the admissible tuning threshold "
                  << format_double(lasso_lambda_min(params.gamma, sigma, n, p, params.s))
                  << "; bounds are not guaranteed\n";
    }
  } else if (estimator == "slope") {
    const Index p = get_integer(cfg, "bounds config", "p");
    const json* wj = find_key(cfg, "weights");
    if (!wj) throw std::invalid_argument("bounds config: missing key 'weights'");
    const WeightSchedule w = parse_weights(*wj, "bounds config.weights", p, std::nullopt);
    const double sigma_s = get_number(cfg, "bounds config", "sigma_s_star", 0.0);
    rep = slope_bound_rhs(params, w, sigma_s, p, re_label);
    echo["p"] = p;
    echo["sigma_s_star"] = sigma_s;
    echo["Lambda_q_s"] = capital_lambda_q(w, params.s, params.q);
  } else {
    throw std::invalid_argument("bounds config: estimator must be 'lasso' or 'slope'");
  }

  json out = bound_report_to_json(rep);
  out["estimator"] = estimator;
  echo["q"] = q_to_json(params.q);
  echo["s"] = params.s;
  echo["gamma"] = params.gamma;
  echo["tau"] = params.tau;
  echo["delta0"] = params.delta0;
  echo["re_constant"] = params.re_constant;
  echo["c0"] = params.c0();
  out["params"] = echo;
  emit(out.dump(2) + "\n", opts.out_dir, "bounds.json");
  return 0;
}

int run_re(const CommonOpts& opts) {
  const json cfg = load_config(opts.config);
  check_keys(cfg, "re config",
             {"x_csv", "quantity", "q", "s", "c0", "weights", "search", "probes"});
  const Matrix X = read_matrix_csv(get_string(cfg, "re config", "x_csv"));
  const std::string quantity = get_string(cfg, "re config", "quantity");
  const Index s = get_integer(cfg, "re config", "s");

  json out;
  if (quantity == "theta_max") {
    RESearchConfig search = parse_search(find_key(cfg, "search"), "re config.search");
    if (opts.randomized) {
      const int probes = static_cast<int>(get_integer(cfg, "re config", "probes", 500));
      out["theta_max"] =
          max_sparse_eigenvalue_randomized(X, s, probes, opts.seed.value_or(0));
      out["method"] = "randomized-supports";
      out["restarts"] = probes;
    } else {
      out["theta_max"] = max_sparse_eigenvalue(X, s, search.enumeration_budget);
      out["method"] = "exhaustive-supports";
    }
  } else if (quantity == "theta" || quantity == "nu") {
    const NormOrder q = parse_q(cfg, "re config");
    const double c0 = get_number(cfg, "re config", "c0", 7.0);
    RESearchConfig search = parse_search(find_key(cfg, "search"), "re config.search");
    search.seed = opts.seed.value_or(0);
    search.strict_normalization = opts.strict;
    REEstimate est;
    if (quantity == "theta") {
      est = estimate_theta_q(X, q, s, c0, search);
    } else {
      const json* wj = find_key(cfg, "weights");
      if (!wj) throw std::invalid_argument("re config: missing key 'weights'");
      const WeightSchedule w = parse_weights(*wj, "re config.weights", X.cols(), X.rows());
      est = estimate_nu_q(X, w, q, s, c0, search);
    }
    out = re_estimate_to_json(est);
    out[quantity] = est.value;
    out.erase("value");
    out["witness"] = std::vector<double>(est.witness.begin(), est.witness.end());
  } else {
    throw std::invalid_argument("re config: quantity must be 'theta', 'nu', or 'theta_max'");
  }
  emit(out.dump(2) + "\n", opts.out_dir, "re.json");
  return 0;
}

int run_simulate(const CommonOpts& opts) {
  json cfg_json = load_config(opts.config);
  check_keys(cfg_json, "simulate config",
             {"design", "signal", "sigma", "bound", "weight_A", "lasso_lambda", "solver",
              "re_search", "trials", "seed"});
  const TrialConfig cfg = parse_trial_config(cfg_json, "simulate config");
  const int trials = opts.trials.value_or(
      static_cast<int>(get_integer(cfg_json, "simulate config", "trials", 200)));
  if (trials < 1) throw std::invalid_argument("simulate config: trials must be positive");
  const std::uint64_t seed = opts.seed.value_or(
      static_cast<std::uint64_t>(get_integer(cfg_json, "simulate config", "seed", 0)));
  warn_tuning(cfg);

  const SimulationReport rep = monte_carlo(cfg, trials, seed);

  const std::string out_dir = opts.out_dir.value_or(".");
  write_out(trials_to_csv(rep), out_dir, "trials.csv");
  json summary = simulation_to_json(rep);
  cfg_json["trials"] = trials;
  cfg_json["seed"] = seed;
  summary["config"] = cfg_json;
  const std::string summary_text = summary.dump(2) + "\n";
  write_out(summary_text, out_dir, "summary.json");
  std::cout << summary_text;

  if (opts.strict) {
    int bad = 0;
    for (const auto& t : rep.trials)
      if (!t.lasso.converged || !t.slope.converged) ++bad;
    if (bad > 0)
      throw std::runtime_error(std::to_string(bad) +
                               " trial(s) did not converge within the iteration budget");
  }
  return 0;
}

int run_sweep(const CommonOpts& opts) {
  json cfg_json = load_config(opts.config);
  check_keys(cfg_json, "sweep config",
             {"design", "signal", "sigma", "bound", "weight_A", "lasso_lambda", "solver",
              "re_search", "axis", "grid", "estimator", "trials_per_point", "seed"});
  const TrialConfig base = parse_trial_config(cfg_json, "sweep config");

  const std::string axis_name = get_string(cfg_json, "sweep config", "axis");
  SweepAxis axis;
  if (axis_name == "s")
    axis = SweepAxis::S;
  else if (axis_name == "p")
    axis = SweepAxis::P;
  else if (axis_name == "n")
    axis = SweepAxis::N;
  else
    throw std::invalid_argument("sweep config: axis must be 's', 'p', or 'n'");

  const json* grid_json = find_key(cfg_json, "grid");
  if (!grid_json || !grid_json->is_array() || grid_json->empty())
    throw std::invalid_argument("sweep config: 'grid' must be a non-empty array of integers");
  std::vector<Index> grid;
  for (const auto& v : *grid_json) {
    if (!v.is_number_integer() || v.get<Index>() < 1)
      throw std::invalid_argument("sweep config: grid values must be positive integers");
    grid.push_back(v.get<Index>());
  }

  const std::string est_name =
      get_string(cfg_json, "sweep config", "estimator", std::string("slope"));
  WhichEstimator estimator;
  if (est_name == "lasso")
    estimator = WhichEstimator::Lasso;
  else if (est_name == "slope")
    estimator = WhichEstimator::Slope;
  else
    throw std::invalid_argument("sweep config: estimator must be 'lasso' or 'slope'");

  const int tpp = opts.trials.value_or(
      static_cast<int>(get_integer(cfg_json, "sweep config", "trials_per_point", 50)));
  if (tpp < 1) throw std::invalid_argument("sweep config: trials_per_point must be positive");
  const std::uint64_t seed = opts.seed.value_or(
      static_cast<std::uint64_t>(get_integer(cfg_json, "sweep config", "seed", 0)));

  for (Index v : grid) {
    const Index s = axis == SweepAxis::S ? v : base.bound.s;
    const Index p = axis == SweepAxis::P ? v : base.design.p;
    if (!minimax_regime_ok(s, p))
      std::cerr << "warning: grid point outside the rate-regime s <= p/2 (s=" << s
                << ", p=" << p << "); predictor not meaningful there\n";
  }

  const SweepReport rep = rate_sweep(axis, grid, base, estimator, tpp, seed);

  const std::string out_dir = opts.out_dir.value_or(".");
  write_out(sweep_to_csv(rep), out_dir, "sweep.csv");
  json summary = sweep_to_json(rep);
  cfg_json["trials_per_point"] = tpp;
  cfg_json["seed"] = seed;
  summary["config"] = cfg_json;
  const std::string summary_text = summary.dump(2) + "\n";
  write_out(summary_text, out_dir, "sweep_summary.json");
  std::cout << summary_text;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sorted-l1 and l1 penalized regression: tuning, solving, bound evaluation,"
               " cone-constant estimation, and Monte Carlo verification"};
  app.require_subcommand(1);

  CommonOpts opts;
  Index w_p = 0, w_n = 0;
  double w_sigma = 1.0, w_A = default_weight_multiplier();

  CLI::App* weights = app.add_subcommand("weights", "Emit the sorted-penalty weight schedule as CSV");
  weights->add_option("--p", w_p, "dimension")->required();
  weights->add_option("--n", w_n, "sample size")->required();
  weights->add_option("--sigma", w_sigma, "noise level");
  weights->add_option("--A", w_A, "weight multiplier");

  CLI::App* solve = app.add_subcommand("solve", "Fit one estimator; JSON solution out");
  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate bound constants and right-hand sides");
  CLI::App* re = app.add_subcommand("re", "Estimate cone constants of a design matrix");
  CLI::App* simulate = app.add_subcommand("simulate", "Monte Carlo bound-coverage batch");
  CLI::App* sweep = app.add_subcommand("sweep", "Median-error scaling across a grid");

  for (CLI::App* sub : {solve, bounds, re, simulate, sweep})
    sub->add_option("--config", opts.config, "JSON config path")->required();
  for (CLI::App* sub : {weights, solve, bounds, re, simulate, sweep}) {
    sub->add_option_function<std::string>(
        "--out-dir", [&](const std::string& v) { opts.out_dir = v; },
        "directory for output files");
    sub->add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { opts.seed = v; }, "master seed");
  }
  for (CLI::App* sub : {simulate, sweep})
    sub->add_option_function<int>(
        "--trials", [&](int v) { opts.trials = v; },
        "trial count (simulate) / trials per grid point (sweep)");
  for (CLI::App* sub : {solve, re, simulate})
    sub->add_flag("--strict", opts.strict, "treat non-convergence/normalization as failure");
  re->add_flag("--randomized", opts.randomized,
               "allow randomized support search past the enumeration budget");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (weights->parsed()) return run_weights(w_p, w_n, w_sigma, w_A, opts.out_dir);
    if (solve->parsed()) return run_solve(opts);
    if (bounds->parsed()) return run_bounds(opts);
    if (re->parsed()) return run_re(opts);
    if (simulate->parsed()) return run_simulate(opts);
    return run_sweep(opts);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
