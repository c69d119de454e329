#pragma once
#include <string>

#include "wcf/config.hpp"

namespace wcf {

/// Command backends. Each produces the complete file contents so callers
/// (CLI and tests) get byte-identical output for identical config and seed.
/// Probabilities are printed with 9 significant digits.

/// One row per sweep distance: optimal reflectivities, honest outcome
/// distribution and the fairness/correctness metrics.
std::string honest_csv(const ExperimentConfig& config);

/// One row per sweep distance for the always-claim strategy: winning and
/// sanction probabilities (complementary by construction).
std::string cheat_bob_csv(const ExperimentConfig& config);

/// One row per swept reflectivity x: outcome probabilities and the cheating
/// interest for every configured deterrent factor.
std::string cheat_alice_csv(const ExperimentConfig& config);

/// Sampling campaign for the configured scenario: empirical outcome rates
/// with standard errors, the analytic reference, and per-outcome z-scores.
nlohmann::json mc_summary(const ExperimentConfig& config);

/// Line-delimited records of the same campaign (one JSON object per run).
std::string mc_run_log(const ExperimentConfig& config);

/// Joint spectral intensity grid (matrix CSV, axes included) and a summary
/// of Schmidt number, purity, marginal FWHM and coherence length.
struct JsaReport {
  std::string grid_csv;
  nlohmann::json summary;
};
JsaReport jsa_report(const ExperimentConfig& config);

/// %.9g formatting used in every CSV cell.
std::string format_value(double value);

}  // namespace wcf
