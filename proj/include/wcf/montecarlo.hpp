#pragma once
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wcf/protocol.hpp"
#include "wcf/rng.hpp"

namespace wcf {

/// Slow-phase evolution across runs: either pinned to a constant value or a
/// Gaussian random walk (one step per heralded run) wrapped to [-pi, pi].
struct SlowPhaseProcess {
  enum class Kind { Constant, RandomWalk };
  Kind kind = Kind::Constant;
  double value = 0.0;      // constant value / walk start
  double step_std = 0.01;  // radians per run, RandomWalk only
};

/// Imperfections sampled per run. Dark probabilities are per gated run:
/// herald_dark_prob triggers runs carrying no photon, signal_dark_prob
/// applies independently to each gated signal detector.
struct NoiseModel {
  double pair_prob = 0.015;
  double herald_dark_prob = 1.1765e-5;  // 40 Hz false triggers at a 51 kHz run rate
  double signal_dark_prob = 5e-8;       // <100 Hz dark rate in a 500 ps gate
  bool double_pair_enabled = false;     // second pair with probability pair_prob^2
  SlowPhaseProcess slow_phase;
};

void validate(const NoiseModel& noise);

/// One protocol run. Flag presence follows the switch routing: a exists only
/// when b=1, (v1,v2) only when b=0. false_trigger marks herald dark counts
/// (simulation ground truth, not an observable).
struct RunRecord {
  bool herald = false;
  bool b = false;
  std::optional<bool> a;
  std::optional<bool> v1;
  std::optional<bool> v2;
  double slow_phase = 0.0;
  bool false_trigger = false;
};

Outcome classify(const RunRecord& record);

/// Herald-conditioned coincidence tallies, named by the detector set that
/// fired together (h = herald, B = decision detector, A = Alice's
/// verification detector, V1/V2 = Bob's verification detectors).
struct CoincidenceCounts {
  std::uint64_t r_h = 0;
  std::uint64_t r_hb = 0;
  std::uint64_t r_ha = 0;
  std::uint64_t r_hab = 0;
  std::uint64_t r_hv1 = 0;
  std::uint64_t r_hv2 = 0;
  std::uint64_t r_hbv1 = 0;
  std::uint64_t r_hbv2 = 0;
  std::uint64_t r_hv1v2 = 0;
  std::uint64_t r_hbv1v2 = 0;

  CoincidenceCounts& operator+=(const CoincidenceCounts& other);
};

/// Throws std::domain_error when a multi-detector tally exceeds one of its
/// sub-tallies.
void validate(const CoincidenceCounts& counts);

/// Samples one run from its private random stream. The photon fate is drawn
/// in protocol order: first the decision detector, then (conditionally) the
/// verification stage the switch routes to. bob_forces_one models Bob
/// claiming b=1 on every run, which sends Alice's mode to her own detector.
RunRecord sample_run(RunRng& rng, const Reflectivities& refl, const PathEfficiencies& eff,
                     const InterferenceModel& interf, const NoiseModel& noise,
                     bool bob_forces_one = false);

/// Tallies heralded records; with a phase window only runs whose slow phase
/// lies within |phase| <= window (after wrapping) are counted.
CoincidenceCounts accumulate(std::span<const RunRecord> records,
                             std::optional<double> phase_window = std::nullopt);

/// Recovers the outcome distribution from the tallies by exclusive-rate
/// algebra, e.g. P(Bob wins) = (R_hB - R_hAB) / R_h. Throws when R_h = 0 or
/// when the algebra turns negative beyond a one-count slack.
OutcomeDistribution outcome_rates(const CoincidenceCounts& counts);

/// Full sampling setup for a campaign.
struct CampaignConfig {
  Reflectivities refl;
  PathEfficiencies eff;
  double visibility = 1.0;
  NoiseModel noise;
  bool bob_forces_one = false;
};

/// Runs pulses until n_heralded runs have triggered. Each pulse uses the
/// counter-based stream (seed, pulse index); the slow-phase walk advances
/// once per heralded run from its own stream, so identical seeds reproduce
/// identical records regardless of scheduling.
std::vector<RunRecord> run_campaign(const CampaignConfig& config, std::uint64_t n_heralded,
                                    std::uint64_t seed);

/// Contrast-based visibility estimate: samples n_heralded runs at slow phase
/// 0 and pi and forms the V1 contrast ratio.
double estimate_visibility_mc(const CampaignConfig& config, std::uint64_t n_heralded,
                              std::uint64_t seed);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double phi);

}  // namespace wcf
