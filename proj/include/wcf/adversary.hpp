#pragma once
#include <vector>

#include "wcf/protocol.hpp"

namespace wcf {

/// Outcomes when Bob always claims the winning bit. Alice keeps the honest
/// reflectivity, so her verification detector fires with probability
/// x_h * eta_a_s; the run never aborts.
OutcomeDistribution bob_optimal_attack(const PathEfficiencies& eff, double visibility);

/// Outcomes when Alice deviates only through her splitter reflectivity x
/// while Bob keeps the honest y and z = 1/2.
OutcomeDistribution alice_x_attack(double x, const PathEfficiencies& eff, double visibility);

/// Alice's cheating interest
///   I_A(delta) = (P_Aw - P_Bw - delta P_As) / (P_Aw + P_Bw + delta P_As)
/// for a deterrent factor delta >= 0 (values above 1 model harsher
/// sanctions). Throws when the denominator is not positive.
double interest(const OutcomeDistribution& dist, double delta);

/// Bob-side counterpart with the roles swapped; the symmetric extension of
/// the same deterrent construction.
double interest_bob(const OutcomeDistribution& dist, double delta);

/// Fairness after the sanction "give the win to Bob with probability delta":
/// delta * P(A sanctioned) moves into P(B wins) before F is evaluated.
/// Only defined for delta in [0,1]; satisfies F = 1 - |I_A(delta)|.
double fairness_under_sanction(const OutcomeDistribution& dist, double delta);

/// Evenly spaced sweep grid over [lo, hi], endpoints included.
std::vector<double> sweep_grid(double lo, double hi, int points);

/// Default granularity of the x sweeps.
inline constexpr int kDefaultSweepPoints = 200;

}  // namespace wcf
