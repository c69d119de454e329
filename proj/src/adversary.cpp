#include "wcf/adversary.hpp"

#include <cmath>
#include <stdexcept>

namespace wcf {

OutcomeDistribution bob_optimal_attack(const PathEfficiencies& eff, double visibility) {
  const Reflectivities honest = honest_reflectivities(eff, visibility);
  OutcomeDistribution d;
  d.bob_sanctioned = honest.x * eff.eta_a_s;
  d.bob_wins = 1.0 - d.bob_sanctioned;
  validate(d);
  return d;
}

OutcomeDistribution alice_x_attack(double x, const PathEfficiencies& eff, double visibility) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error("alice_x_attack: x outside [0,1]");
  }
  const Reflectivities honest = honest_reflectivities(eff, visibility);
  const double y = honest.y;
  const double cross = 2.0 * visibility * std::sqrt(x * (1.0 - x) * y);

  OutcomeDistribution d;
  d.alice_wins = 0.5 * (x * eff.eta_a_v1 + (1.0 - x) * y * eff.eta_b_v1 +
                        cross * std::sqrt(eff.eta_a_v1 * eff.eta_b_v1));
  d.alice_sanctioned = detail::clamp_probability(
      0.5 * (x * eff.eta_a_v2 + (1.0 - x) * y * eff.eta_b_v2 -
             cross * std::sqrt(eff.eta_a_v2 * eff.eta_b_v2)),
      "alice_sanctioned");
  d.bob_wins = (1.0 - x) * (1.0 - y) * eff.eta_b_y;
  d.bob_sanctioned = 0.0;
  d.abort = 1.0 - d.alice_wins - d.alice_sanctioned - d.bob_wins;
  validate(d);
  return d;
}

double interest(const OutcomeDistribution& dist, double delta) {
  if (!(delta >= 0.0)) {
    throw std::domain_error("interest: deterrent factor must be >= 0");
  }
  const double den = dist.alice_wins + dist.bob_wins + delta * dist.alice_sanctioned;
  if (den <= 0.0) {
    throw std::domain_error("interest: denominator is not positive");
  }
  return (dist.alice_wins - dist.bob_wins - delta * dist.alice_sanctioned) / den;
}

double interest_bob(const OutcomeDistribution& dist, double delta) {
  if (!(delta >= 0.0)) {
    throw std::domain_error("interest_bob: deterrent factor must be >= 0");
  }
  const double den = dist.alice_wins + dist.bob_wins + delta * dist.bob_sanctioned;
  if (den <= 0.0) {
    throw std::domain_error("interest_bob: denominator is not positive");
  }
  return (dist.bob_wins - dist.alice_wins - delta * dist.bob_sanctioned) / den;
}

double fairness_under_sanction(const OutcomeDistribution& dist, double delta) {
  if (!(delta >= 0.0 && delta <= 1.0)) {
    throw std::domain_error(
        "fairness_under_sanction: the win-transfer sanction needs delta in [0,1]");
  }
  OutcomeDistribution t = dist;
  t.bob_wins += delta * t.alice_sanctioned;
  t.alice_sanctioned *= 1.0 - delta;
  return fairness(t);
}

std::vector<double> sweep_grid(double lo, double hi, int points) {
  if (points < 2 || !(hi > lo)) {
    throw std::domain_error("sweep_grid: need points >= 2 and hi > lo");
  }
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) {
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / (points - 1);
  }
  return grid;
}

}  // namespace wcf
