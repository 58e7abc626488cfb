#include "slope/report_io.hpp"

#include "slope/io.hpp"

namespace slope {

namespace {

using nlohmann::json;

void append_check(std::string& row, const CheckResult& c) {
  if (c.applicable) {
    row += ',' + format_double(c.lhs) + ',' + format_double(c.rhs) + ',' +
           (c.holds ? "1" : "0");
  } else {
    row += ",,,";
  }
  row += ',';
  if (c.re_flip) row += format_double(*c.re_flip);
}

void append_estimator_row(std::string& out, int trial, const EstimatorTrial& e) {
  std::string row = std::to_string(trial) + ',' + e.estimator;
  row += ',' + format_double(e.err_l1) + ',' + format_double(e.err_l2) + ',' +
         format_double(e.err_lq) + ',' + format_double(e.err_linf);
  row += ',' + format_double(e.objective) + ',' + std::to_string(e.iterations) + ',' +
         (e.converged ? "1" : "0") + ',' + format_double(e.stationarity_residual);
  if (e.event_applicable) {
    row += ',' + format_double(e.event_lhs) + ',' + format_double(e.event_H) + ',' +
           format_double(e.event_G) + ',' + (e.event_holds ? "1" : "0");
  } else {
    row += ",,,,";
  }
  append_check(row, e.prediction);
  append_check(row, e.norm_error);
  append_check(row, e.lq_sparse);
  append_check(row, e.lq_compressible);
  out += row;
  out += '\n';
}

json check_to_json(const CheckResult& c) {
  json j;
  j["applicable"] = c.applicable;
  if (c.applicable) {
    j["holds"] = c.holds;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    if (c.re_flip) j["re_flip"] = *c.re_flip;
  }
  return j;
}

json estimator_to_json(const EstimatorTrial& e) {
  json j;
  j["estimator"] = e.estimator;
  j["errors"] = {{"l1", e.err_l1}, {"l2", e.err_l2}, {"lq", e.err_lq}, {"linf", e.err_linf}};
  j["objective"] = e.objective;
  j["iterations"] = e.iterations;
  j["converged"] = e.converged;
  j["stationarity_residual"] = e.stationarity_residual;
  j["prediction"] = check_to_json(e.prediction);
  j["norm_error"] = check_to_json(e.norm_error);
  j["lq_sparse"] = check_to_json(e.lq_sparse);
  j["lq_compressible"] = check_to_json(e.lq_compressible);
  if (e.event_applicable) {
    j["event"] = {{"holds", e.event_holds},
                  {"lhs", e.event_lhs},
                  {"H", e.event_H},
                  {"G", e.event_G}};
  }
  return j;
}

json coverage_to_json(const CoverageStat& s) {
  return {{"hits", s.hits},
          {"applicable", s.applicable},
          {"frequency", s.freq},
          {"wilson_lo", s.interval.lo},
          {"wilson_hi", s.interval.hi}};
}

const char* axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::S: return "s";
    case SweepAxis::P: return "p";
    default: return "n";
  }
}

}  // namespace

std::string trials_to_csv(const SimulationReport& rep) {
  std::string out =
      "trial,estimator,err_l1,err_l2,err_lq,err_linf,objective,iterations,converged,"
      "stationarity_residual,event_lhs,event_H,event_G,event_holds,"
      "pred_lhs,pred_rhs,pred_holds,pred_re_flip,"
      "norm_lhs,norm_rhs,norm_holds,norm_re_flip,"
      "lq_sparse_lhs,lq_sparse_rhs,lq_sparse_holds,lq_sparse_re_flip,"
      "lq_comp_lhs,lq_comp_rhs,lq_comp_holds,lq_comp_re_flip\n";
  for (const TrialReport& t : rep.trials) {
    append_estimator_row(out, t.trial_index, t.lasso);
    append_estimator_row(out, t.trial_index, t.slope);
  }
  return out;
}

json re_estimate_to_json(const REEstimate& est) {
  return {{"value", est.value},
          {"method", est.method},
          {"direction", est.direction},
          {"restarts", est.restarts}};
}

json bound_report_to_json(const BoundReport& rep) {
  json j;
  j["constant"] = rep.constant;
  j["rhs_prediction"] = rep.rhs_prediction;
  if (rep.rhs_l1) j["rhs_l1"] = *rep.rhs_l1;
  j["rhs_lq_sparse"] = rep.rhs_lq_sparse;
  if (rep.rhs_lq_compressible) j["rhs_lq_compressible"] = *rep.rhs_lq_compressible;
  j["re_label"] = rep.re_label;
  return j;
}

json trial_to_json(const TrialReport& rep) {
  json j;
  j["trial"] = rep.trial_index;
  j["lasso"] = estimator_to_json(rep.lasso);
  j["slope"] = estimator_to_json(rep.slope);
  j["event_holds"] = rep.event_holds;
  return j;
}

json simulation_to_json(const SimulationReport& rep) {
  json j;
  j["n_trials"] = rep.n_trials;
  j["master_seed"] = rep.master_seed;
  j["lambda"] = rep.lambda;
  j["re_label"] = rep.re_label;
  j["theta"] = re_estimate_to_json(rep.theta);
  j["nu"] = re_estimate_to_json(rep.nu);
  j["event_target"] = rep.event_target;
  j["note"] = rep.note;
  j["coverage"] = {{"lasso",
                    {{"prediction", coverage_to_json(rep.lasso_prediction)},
                     {"norm_error", coverage_to_json(rep.lasso_norm)},
                     {"lq_sparse", coverage_to_json(rep.lasso_lq_sparse)},
                     {"lq_compressible", coverage_to_json(rep.lasso_lq_comp)}}},
                   {"slope",
                    {{"prediction", coverage_to_json(rep.slope_prediction)},
                     {"norm_error", coverage_to_json(rep.slope_norm)},
                     {"lq_sparse", coverage_to_json(rep.slope_lq_sparse)},
                     {"lq_compressible", coverage_to_json(rep.slope_lq_comp)}}},
                   {"event",
                    {{"joint", coverage_to_json(rep.event_joint)},
                     {"lasso", coverage_to_json(rep.event_lasso)},
                     {"slope", coverage_to_json(rep.event_slope)}}}};
  return j;
}

std::string sweep_to_csv(const SweepReport& rep) {
  std::string out = "axis_value,n,p,s,median_err_l2,predictor,trials\n";
  for (const SweepPoint& pt : rep.points) {
    out += std::to_string(pt.axis_value) + ',' + std::to_string(pt.n) + ',' +
           std::to_string(pt.p) + ',' + std::to_string(pt.s) + ',' +
           format_double(pt.median_err_l2) + ',' + format_double(pt.predictor) + ',' +
           std::to_string(pt.trials) + '\n';
  }
  return out;
}

json sweep_to_json(const SweepReport& rep) {
  json j;
  j["axis"] = axis_name(rep.axis);
  j["estimator"] = rep.estimator == WhichEstimator::Lasso ? "lasso" : "slope";
  j["noise_floor"] = rep.noise_floor;
  if (rep.log_slope) j["log_slope"] = *rep.log_slope;
  json pts = json::array();
  for (const SweepPoint& pt : rep.points) {
    pts.push_back({{"axis_value", pt.axis_value},
                   {"n", pt.n},
                   {"p", pt.p},
                   {"s", pt.s},
                   {"median_err_l2", pt.median_err_l2},
                   {"predictor", pt.predictor},
                   {"trials", pt.trials}});
  }
  j["points"] = pts;
  return j;
}

}  // namespace slope
