#include "wcf/montecarlo.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace wcf {

namespace {

// Dedicated stream index for the slow-phase walk; pulse streams use the
// pulse counter on the un-negated seed lane, see run_campaign.
constexpr std::uint64_t kPhaseStreamIndex = 0x70686173ULL;

}  // namespace

void validate(const NoiseModel& noise) {
  auto check = [](double p, const char* name) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error(std::string(name) + " outside [0,1]");
    }
  };
  check(noise.pair_prob, "pair_prob");
  check(noise.herald_dark_prob, "herald_dark_prob");
  check(noise.signal_dark_prob, "signal_dark_prob");
  if (noise.slow_phase.kind == SlowPhaseProcess::Kind::RandomWalk &&
      !(noise.slow_phase.step_std >= 0.0)) {
    throw std::domain_error("slow phase step_std must be >= 0");
  }
  if (!std::isfinite(noise.slow_phase.value)) {
    throw std::domain_error("slow phase value must be finite");
  }
}

Outcome classify(const RunRecord& record) {
  return classify_outcome(record.b, record.a, record.v1, record.v2);
}

double wrap_angle(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  phi = std::remainder(phi, two_pi);
  if (phi <= -std::numbers::pi) phi += two_pi;
  return phi;
}

CoincidenceCounts& CoincidenceCounts::operator+=(const CoincidenceCounts& other) {
  r_h += other.r_h;
  r_hb += other.r_hb;
  r_ha += other.r_ha;
  r_hab += other.r_hab;
  r_hv1 += other.r_hv1;
  r_hv2 += other.r_hv2;
  r_hbv1 += other.r_hbv1;
  r_hbv2 += other.r_hbv2;
  r_hv1v2 += other.r_hv1v2;
  r_hbv1v2 += other.r_hbv1v2;
  return *this;
}

void validate(const CoincidenceCounts& c) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::domain_error(std::string("coincidence tallies corrupt: ") + what);
  };
  require(c.r_hb <= c.r_h && c.r_ha <= c.r_h && c.r_hv1 <= c.r_h && c.r_hv2 <= c.r_h,
          "single tallies exceed R_h");
  require(c.r_hab <= c.r_hb && c.r_hab <= c.r_ha, "R_hAB exceeds a sub-tally");
  require(c.r_hbv1 <= c.r_hb && c.r_hbv1 <= c.r_hv1, "R_hBV1 exceeds a sub-tally");
  require(c.r_hbv2 <= c.r_hb && c.r_hbv2 <= c.r_hv2, "R_hBV2 exceeds a sub-tally");
  require(c.r_hv1v2 <= c.r_hv1 && c.r_hv1v2 <= c.r_hv2, "R_hV1V2 exceeds a sub-tally");
  require(c.r_hbv1v2 <= c.r_hbv1 && c.r_hbv1v2 <= c.r_hbv2 && c.r_hbv1v2 <= c.r_hv1v2,
          "R_hBV1V2 exceeds a sub-tally");
}

RunRecord sample_run(RunRng& rng, const Reflectivities& refl, const PathEfficiencies& eff,
                     const InterferenceModel& interf, const NoiseModel& noise,
                     bool bob_forces_one) {
  RunRecord rec;
  rec.slow_phase = interf.slow_phase;

  const bool pair = rng.bernoulli(noise.pair_prob);
  const bool dark_trigger = rng.bernoulli(noise.herald_dark_prob);
  rec.herald = pair || dark_trigger;
  rec.false_trigger = !pair && dark_trigger;
  if (!rec.herald) return rec;

  int n_photons = pair ? 1 : 0;
  if (pair && noise.double_pair_enabled && rng.bernoulli(noise.pair_prob)) {
    n_photons = 2;
  }

  const DetectionProbabilities dp = detection_probabilities(refl, eff, interf);
  if (dp.p_v1 + dp.p_v2 + dp.p_db > 1.0 + 1e-12) {
    // Possible only for efficiencies inconsistent with any physical set of
    // per-arm and per-detector factors; no categorical fate exists then.
    throw std::domain_error("sample_run: detection probabilities exceed unity");
  }

  // Decision stage happens first: each photon may be consumed by the
  // decision detector; a dark count there also claims the run for Bob.
  bool consumed[2] = {false, false};
  bool db_click = false;
  for (int i = 0; i < n_photons; ++i) {
    if (rng.bernoulli(dp.p_db)) {
      consumed[i] = true;
      db_click = true;
    }
  }
  const bool db_dark = rng.bernoulli(noise.signal_dark_prob);
  rec.b = bob_forces_one || db_click || db_dark;

  // Verification stage. The switch gates Alice's detector on b=1 and the
  // z-splitter outputs on b=0; surviving photons follow that routing with
  // the conditionals renormalized on not having clicked the decision
  // detector.
  const double survive = 1.0 - dp.p_db;
  if (rec.b) {
    bool a = rng.bernoulli(noise.signal_dark_prob);
    for (int i = 0; i < n_photons; ++i) {
      if (!consumed[i]) {
        a = a || rng.bernoulli(refl.x * eff.eta_a_s / survive);
      }
    }
    rec.a = a;
  } else {
    bool v1 = rng.bernoulli(noise.signal_dark_prob);
    bool v2 = rng.bernoulli(noise.signal_dark_prob);
    for (int i = 0; i < n_photons; ++i) {
      const double u = rng.uniform();
      if (u < dp.p_v1 / survive) {
        v1 = true;
      } else if (u < (dp.p_v1 + dp.p_v2) / survive) {
        v2 = true;
      }
    }
    rec.v1 = v1;
    rec.v2 = v2;
  }
  return rec;
}

CoincidenceCounts accumulate(std::span<const RunRecord> records,
                             std::optional<double> phase_window) {
  CoincidenceCounts c;
  for (const RunRecord& rec : records) {
    if (!rec.herald) continue;
    if (phase_window && std::abs(wrap_angle(rec.slow_phase)) > *phase_window) continue;
    const bool B = rec.b;
    const bool A = rec.a.value_or(false);
    const bool V1 = rec.v1.value_or(false);
    const bool V2 = rec.v2.value_or(false);
    c.r_h += 1;
    c.r_hb += B;
    c.r_ha += A;
    c.r_hab += A && B;
    c.r_hv1 += V1;
    c.r_hv2 += V2;
    c.r_hbv1 += B && V1;
    c.r_hbv2 += B && V2;
    c.r_hv1v2 += V1 && V2;
    c.r_hbv1v2 += B && V1 && V2;
  }
  return c;
}

OutcomeDistribution outcome_rates(const CoincidenceCounts& counts) {
  validate(counts);
  if (counts.r_h == 0) {
    throw std::domain_error("outcome_rates: no heralded runs (R_h = 0)");
  }
  auto i64 = [](std::uint64_t v) { return static_cast<std::int64_t>(v); };
  std::int64_t n[5];
  n[0] = i64(counts.r_hv1) - i64(counts.r_hv1v2) - i64(counts.r_hbv1) + i64(counts.r_hbv1v2);
  n[1] = i64(counts.r_hb) - i64(counts.r_hab);
  n[2] = i64(counts.r_hv2) - i64(counts.r_hbv2);
  n[3] = i64(counts.r_hab);
  n[4] = i64(counts.r_h) - n[0] - n[1] - n[2] - n[3];
  for (std::int64_t& v : n) {
    if (v < -1) {
      throw std::domain_error("outcome_rates: negative event count " + std::to_string(v) +
                              " beyond the one-count slack");
    }
    if (v == -1) v = 0;  // within the -1/R_h slack
  }
  const double r_h = static_cast<double>(counts.r_h);
  OutcomeDistribution d;
  d.alice_wins = n[0] / r_h;
  d.bob_wins = n[1] / r_h;
  d.alice_sanctioned = n[2] / r_h;
  d.bob_sanctioned = n[3] / r_h;
  d.abort = n[4] / r_h;
  return d;
}

std::vector<RunRecord> run_campaign(const CampaignConfig& config, std::uint64_t n_heralded,
                                    std::uint64_t seed) {
  validate(config.refl);
  validate(config.eff);
  validate(config.noise);
  if (config.noise.pair_prob + config.noise.herald_dark_prob <= 0.0) {
    throw std::domain_error("run_campaign: no runs can ever trigger");
  }

  // The slow-phase series has its own stream and advances once per heralded
  // run, so record r's phase depends only on (seed, r).
  RunRng phase_rng(~seed, kPhaseStreamIndex);
  std::normal_distribution<double> step(0.0, config.noise.slow_phase.step_std);
  double phase = config.noise.slow_phase.value;
  const bool walk = config.noise.slow_phase.kind == SlowPhaseProcess::Kind::RandomWalk;

  std::vector<RunRecord> records;
  records.reserve(n_heralded);
  for (std::uint64_t pulse = 0; records.size() < n_heralded; ++pulse) {
    RunRng rng(seed, pulse);
    InterferenceModel interf{config.visibility, phase};
    RunRecord rec =
        sample_run(rng, config.refl, config.eff, interf, config.noise, config.bob_forces_one);
    if (rec.herald) {
      records.push_back(rec);
      if (walk) phase = wrap_angle(phase + step(phase_rng));
    }
  }
  return records;
}

double estimate_visibility_mc(const CampaignConfig& config, std::uint64_t n_heralded,
                              std::uint64_t seed) {
  auto probe = [&](double phase, std::uint64_t stream_seed) {
    CampaignConfig c = config;
    c.noise.slow_phase = SlowPhaseProcess{SlowPhaseProcess::Kind::Constant, phase, 0.0};
    const std::vector<RunRecord> records = run_campaign(c, n_heralded, stream_seed);
    const CoincidenceCounts counts = accumulate(records);
    return static_cast<double>(counts.r_hv1) / static_cast<double>(counts.r_h);
  };
  const double p_zero = probe(0.0, seed);
  const double p_pi = probe(std::numbers::pi, seed + 1);
  return visibility_from_probabilities(p_zero, p_pi);
}

}  // namespace wcf
