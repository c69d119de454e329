#pragma once
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "wcf/adversary.hpp"
#include "wcf/montecarlo.hpp"
#include "wcf/spdc.hpp"

namespace wcf {

/// Configuration problem (unreadable file, unknown key, out-of-range value).
/// Messages name the offending field.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Sweep axes for the analytic commands.
struct SweepSpec {
  std::vector<double> distances_km = {0, 5, 10, 15, 20, 25};
  double x_min = 0.0;
  double x_max = 1.0;
  int x_points = kDefaultSweepPoints;
  std::vector<double> deltas = {0.0, 0.5, 1.0, 2.0};
};

/// Monte Carlo campaign settings. scenario is one of "honest", "bob_attack",
/// "alice_attack"; alice_x is the dishonest reflectivity for the last one.
struct McSpec {
  std::uint64_t runs = 1000000;
  std::string scenario = "honest";
  double alice_x = 0.78;
  std::optional<double> phase_window;
};

/// Joint-spectral-amplitude command settings.
struct JsaSpec {
  int grid_size = 512;
  double window_sigmas = 4.0;
  bool separable_toy = false;
  SourceParams source;
};

/// Everything a command needs: measured path efficiencies (defaults are the
/// benchmarked setup values), interference visibility, noise and channel
/// models, sweep axes and the random seed.
struct ExperimentConfig {
  PathEfficiencies efficiencies{0.315, 0.303, 0.231, 0.219, 0.184, 0.175};
  double visibility = 0.96;
  NoiseModel noise;
  ChannelModel channel;
  SweepSpec sweeps;
  McSpec mc;
  JsaSpec jsa;
  std::uint64_t seed = 20250810;
  std::string out_dir = ".";
};

ExperimentConfig default_config();

/// Parse/serialize against the documented schema (docs/formats.md). parsing
/// rejects unknown keys and re-validates every field; serialize(parse(x))
/// is the canonical form.
ExperimentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const ExperimentConfig& config);
ExperimentConfig load_config(const std::string& path);

void validate(const ExperimentConfig& config);

}  // namespace wcf
