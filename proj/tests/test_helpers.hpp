#pragma once
#include <cmath>
#include <random>

#include "wcf/protocol.hpp"

namespace wcf::test {

/// Measured path efficiencies of the benchmarked setup.
inline PathEfficiencies bench_efficiencies() {
  return PathEfficiencies{0.315, 0.303, 0.231, 0.219, 0.184, 0.175};
}

inline PathEfficiencies ideal_efficiencies() {
  return PathEfficiencies{1.0, 1.0, 1.0, 1.0, 1.0, 1.0};
}

/// Efficiencies bounded away from zero so every solver precondition holds.
inline PathEfficiencies random_efficiencies(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  return PathEfficiencies{u(rng), u(rng), u(rng), u(rng), u(rng), u(rng)};
}

/// Random efficiencies with the structure of the physical setup: the four
/// verification-path composites share per-arm and per-detector factors.
/// The closed-form honest/attack distributions and the sub-unity detection
/// bound are exact only on this family; independently drawn composites model
/// inconsistent measurements.
inline PathEfficiencies random_factorized_efficiencies(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.05, 1.0);
  const double arm_a = u(rng);
  const double arm_b = u(rng);
  const double det_v1 = u(rng);
  const double det_v2 = u(rng);
  PathEfficiencies eff;
  eff.eta_a_s = u(rng);
  eff.eta_b_y = u(rng);
  eff.eta_a_v1 = arm_a * det_v1;
  eff.eta_a_v2 = arm_a * det_v2;
  eff.eta_b_v1 = arm_b * det_v1;
  eff.eta_b_v2 = arm_b * det_v2;
  return eff;
}

inline Reflectivities random_reflectivities(std::mt19937& rng, double lo = 0.0,
                                            double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  return Reflectivities{u(rng), u(rng), u(rng)};
}

/// Normalized five-outcome distribution with non-vanishing win probabilities.
inline OutcomeDistribution random_distribution(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double p[5];
  double sum = 0.0;
  for (double& v : p) {
    v = u(rng) + 1e-3;
    sum += v;
  }
  OutcomeDistribution d;
  d.alice_wins = p[0] / sum;
  d.bob_wins = p[1] / sum;
  d.alice_sanctioned = p[2] / sum;
  d.bob_sanctioned = p[3] / sum;
  d.abort = p[4] / sum;
  return d;
}

}  // namespace wcf::test
