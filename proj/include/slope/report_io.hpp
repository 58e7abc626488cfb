#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "slope/harness.hpp"

namespace slope {

// One row per (trial, estimator); inapplicable checks leave empty cells.
// Fixed column order and %.17g floats make the output byte-reproducible.
std::string trials_to_csv(const SimulationReport& rep);

nlohmann::json simulation_to_json(const SimulationReport& rep);

std::string sweep_to_csv(const SweepReport& rep);
nlohmann::json sweep_to_json(const SweepReport& rep);

nlohmann::json trial_to_json(const TrialReport& rep);
nlohmann::json re_estimate_to_json(const REEstimate& est);
nlohmann::json bound_report_to_json(const BoundReport& rep);

}  // namespace slope
