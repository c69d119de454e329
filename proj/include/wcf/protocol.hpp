#pragma once
#include <optional>
#include <string>

#include "wcf/optics.hpp"

namespace wcf {

/// The five mutually exclusive results of one protocol run.
enum class Outcome { AliceWins, BobWins, AliceSanctioned, BobSanctioned, Abort };

const char* to_string(Outcome o);

/// Probabilities of the five outcomes. Sums to 1 within 1e-9.
struct OutcomeDistribution {
  double alice_wins = 0.0;
  double bob_wins = 0.0;
  double alice_sanctioned = 0.0;
  double bob_sanctioned = 0.0;
  double abort = 0.0;
};

void validate(const OutcomeDistribution& d);

/// Natural-log attenuation per kilometre of the distance-emulating
/// attenuators: transmission exp(-0.02 L) each.
inline constexpr double kAttenuationPerKm = 0.02;

/// How many attenuation factors each path accrues at distance L. The
/// placement is configuration, not physics: the default is one factor per
/// path.
struct VoaCounts {
  int eta_a_s = 1;
  int eta_b_y = 1;
  int eta_a_v1 = 1;
  int eta_a_v2 = 1;
  int eta_b_v1 = 1;
  int eta_b_v2 = 1;
};

/// Emulated communication distance and the attenuators realizing it.
struct ChannelModel {
  double distance_km = 0.0;
  double attenuation_per_km = kAttenuationPerKm;
  VoaCounts voa_counts;
};

void validate(const ChannelModel& c);

/// Fairness F in [0,1] and correctness C <= 1. C can go negative when
/// sanction probabilities dominate the wins; it is deliberately not clamped.
struct Metrics {
  double fairness = 0.0;
  double correctness = 0.0;
};

/// Maps the broadcast bit and the verification flags to an outcome.
/// Flag presence must match the branch taken: b=0 carries (v1,v2) and no a,
/// b=1 carries a and no (v1,v2). Violations throw std::invalid_argument.
/// A set v2 sanctions Alice regardless of v1.
Outcome classify_outcome(bool b, std::optional<bool> a, std::optional<bool> v1,
                         std::optional<bool> v2);

/// Reflectivities that make honest win probabilities equal and minimize the
/// honest sanction rate, for the given efficiencies and visibility.
/// Requires eta_b_v1 > 0 and eta_b_y > 0.
Reflectivities honest_reflectivities(const PathEfficiencies& eff, double visibility);

/// Applies exp(-attenuation_per_km * L) to each path, once per configured
/// attenuator count.
PathEfficiencies apply_channel(const PathEfficiencies& eff, const ChannelModel& channel);

/// Outcome distribution of the honest protocol at the optimal reflectivities
/// and zero slow phase, in the no-dark-count single-pair model.
OutcomeDistribution honest_outcomes(const PathEfficiencies& eff, double visibility);

/// F = 1 - |P(A wins) - P(B wins)| / (P(A wins) + P(B wins)).
/// Throws std::domain_error when both win probabilities are zero.
double fairness(const OutcomeDistribution& dist);

/// C = 1 - (P(A sanctioned) + P(B sanctioned)) / (P(A wins) + P(B wins)).
double correctness(const OutcomeDistribution& dist);

Metrics metrics(const OutcomeDistribution& dist);

/// Lossless reflectivities satisfying the alternative balancing requirement
/// instead of the correctness one: (1 - 1/sqrt(2), 1/sqrt(2), 2 - sqrt(2)).
/// Kept for comparison; they sanction an honest Alice with probability ~0.037.
Reflectivities balanced_reflectivities();

/// Calibration probabilities from which reflectivities are recovered:
/// p_da with the switch forced to Alice's detector, p_db at the decision
/// detector, p_v1_blocked (and optionally p_v2_blocked) with Bob's arm
/// blocked and the switch in the verification state.
struct ReflectivityProbes {
  double p_da = 0.0;
  double p_db = 0.0;
  double p_v1_blocked = 0.0;
  std::optional<double> p_v2_blocked;
};

double estimate_x(double p_da, const PathEfficiencies& eff);
double estimate_y(double p_db, double x, const PathEfficiencies& eff);
double estimate_z_from_v1(double p_v1_blocked, double x, const PathEfficiencies& eff);
double estimate_z_from_v2(double p_v2_blocked, double x, const PathEfficiencies& eff);

/// Inverts the probe probabilities to (x, y, z). When both blocked-arm
/// probes are given the two z estimates must agree within consistency_tol;
/// disagreement signals inconsistent inputs and throws.
Reflectivities estimate_reflectivities(const ReflectivityProbes& probes,
                                       const PathEfficiencies& eff,
                                       double consistency_tol = 1e-9);

/// Forward model of the calibration measurements for a given setting.
ReflectivityProbes simulate_probes(const Reflectivities& refl, const PathEfficiencies& eff);

}  // namespace wcf
