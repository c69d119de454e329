#include "wcf/protocol.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wcf {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::AliceWins: return "alice_wins";
    case Outcome::BobWins: return "bob_wins";
    case Outcome::AliceSanctioned: return "alice_sanctioned";
    case Outcome::BobSanctioned: return "bob_sanctioned";
    case Outcome::Abort: return "abort";
  }
  return "?";
}

void validate(const OutcomeDistribution& d) {
  const double probs[] = {d.alice_wins, d.bob_wins, d.alice_sanctioned, d.bob_sanctioned,
                          d.abort};
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      throw std::domain_error("outcome probability " + std::to_string(p) + " outside [0,1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::domain_error("outcome probabilities sum to " + std::to_string(sum));
  }
}

void validate(const ChannelModel& c) {
  if (!(c.distance_km >= 0.0) || !std::isfinite(c.distance_km)) {
    throw std::domain_error("distance_km must be finite and >= 0");
  }
  if (!(c.attenuation_per_km >= 0.0)) {
    throw std::domain_error("attenuation_per_km must be >= 0");
  }
  const int counts[] = {c.voa_counts.eta_a_s,  c.voa_counts.eta_b_y,  c.voa_counts.eta_a_v1,
                        c.voa_counts.eta_a_v2, c.voa_counts.eta_b_v1, c.voa_counts.eta_b_v2};
  for (int n : counts) {
    if (n < 0) throw std::domain_error("voa count must be >= 0");
  }
}

Outcome classify_outcome(bool b, std::optional<bool> a, std::optional<bool> v1,
                         std::optional<bool> v2) {
  if (b) {
    if (!a.has_value() || v1.has_value() || v2.has_value()) {
      throw std::invalid_argument("b=1 run must carry a and no verification flags");
    }
    return *a ? Outcome::BobSanctioned : Outcome::BobWins;
  }
  if (a.has_value() || !v1.has_value() || !v2.has_value()) {
    throw std::invalid_argument("b=0 run must carry (v1,v2) and no a");
  }
  if (*v2) return Outcome::AliceSanctioned;
  if (*v1) return Outcome::AliceWins;
  return Outcome::Abort;
}

Reflectivities honest_reflectivities(const PathEfficiencies& eff, double visibility) {
  validate(eff);
  validate(InterferenceModel{visibility, 0.0});
  if (eff.eta_b_v1 <= 0.0 || eff.eta_b_y <= 0.0) {
    throw std::domain_error("honest_reflectivities requires eta_b_v1 > 0 and eta_b_y > 0");
  }
  Reflectivities r;
  r.x = 1.0 / (1.0 + eff.eta_a_v1 / eff.eta_b_v1 +
               (eff.eta_a_v1 / eff.eta_b_y) * (1.0 + visibility));
  r.y = 1.0 / (1.0 + (eff.eta_b_v1 / eff.eta_b_y) * (1.0 + visibility));
  r.z = 0.5;
  return r;
}

PathEfficiencies apply_channel(const PathEfficiencies& eff, const ChannelModel& channel) {
  validate(eff);
  validate(channel);
  const double t = std::exp(-channel.attenuation_per_km * channel.distance_km);
  auto att = [t](double eta, int count) { return eta * std::pow(t, count); };
  PathEfficiencies out;
  out.eta_a_s = att(eff.eta_a_s, channel.voa_counts.eta_a_s);
  out.eta_b_y = att(eff.eta_b_y, channel.voa_counts.eta_b_y);
  out.eta_a_v1 = att(eff.eta_a_v1, channel.voa_counts.eta_a_v1);
  out.eta_a_v2 = att(eff.eta_a_v2, channel.voa_counts.eta_a_v2);
  out.eta_b_v1 = att(eff.eta_b_v1, channel.voa_counts.eta_b_v1);
  out.eta_b_v2 = att(eff.eta_b_v2, channel.voa_counts.eta_b_v2);
  return out;
}

OutcomeDistribution honest_outcomes(const PathEfficiencies& eff, double visibility) {
  const Reflectivities r = honest_reflectivities(eff, visibility);
  OutcomeDistribution d;
  const double win = r.x * eff.eta_a_v1 * (1.0 + visibility);
  d.alice_wins = win;
  d.bob_wins = win;
  d.alice_sanctioned = r.x * eff.eta_a_v2 * (1.0 - visibility);
  d.bob_sanctioned = 0.0;
  d.abort = 1.0 - d.alice_wins - d.bob_wins - d.alice_sanctioned;
  validate(d);
  return d;
}

double fairness(const OutcomeDistribution& dist) {
  const double wins = dist.alice_wins + dist.bob_wins;
  if (wins <= 0.0) {
    throw std::domain_error("fairness undefined: both win probabilities are zero");
  }
  return 1.0 - std::abs((dist.alice_wins - dist.bob_wins) / wins);
}

double correctness(const OutcomeDistribution& dist) {
  const double wins = dist.alice_wins + dist.bob_wins;
  if (wins <= 0.0) {
    throw std::domain_error("correctness undefined: both win probabilities are zero");
  }
  return 1.0 - (dist.alice_sanctioned + dist.bob_sanctioned) / wins;
}

Metrics metrics(const OutcomeDistribution& dist) {
  return Metrics{fairness(dist), correctness(dist)};
}

Reflectivities balanced_reflectivities() {
  const double s = std::sqrt(2.0);
  return Reflectivities{1.0 - 1.0 / s, 1.0 / s, 2.0 - s};
}

namespace {

double checked_reflectivity(double value, const char* name, double tol = 1e-9) {
  if (value < -tol || value > 1.0 + tol) {
    throw std::domain_error(std::string("estimated ") + name + " = " + std::to_string(value) +
                            " outside [0,1]");
  }
  return std::min(1.0, std::max(0.0, value));
}

}  // namespace

double estimate_x(double p_da, const PathEfficiencies& eff) {
  validate(eff);
  if (eff.eta_a_s <= 0.0) throw std::domain_error("estimate_x requires eta_a_s > 0");
  return checked_reflectivity(p_da / eff.eta_a_s, "x");
}

double estimate_y(double p_db, double x, const PathEfficiencies& eff) {
  validate(eff);
  if (eff.eta_b_y <= 0.0) throw std::domain_error("estimate_y requires eta_b_y > 0");
  if (x >= 1.0) throw std::domain_error("estimate_y requires x < 1");
  return checked_reflectivity(p_db / ((1.0 - x) * eff.eta_b_y), "y");
}

double estimate_z_from_v1(double p_v1_blocked, double x, const PathEfficiencies& eff) {
  validate(eff);
  if (eff.eta_a_v1 <= 0.0) throw std::domain_error("estimate_z_from_v1 requires eta_a_v1 > 0");
  if (x <= 0.0) throw std::domain_error("estimate_z_from_v1 requires x > 0");
  return checked_reflectivity(p_v1_blocked / (x * eff.eta_a_v1), "z");
}

double estimate_z_from_v2(double p_v2_blocked, double x, const PathEfficiencies& eff) {
  validate(eff);
  if (eff.eta_a_v2 <= 0.0) throw std::domain_error("estimate_z_from_v2 requires eta_a_v2 > 0");
  if (x <= 0.0) throw std::domain_error("estimate_z_from_v2 requires x > 0");
  return checked_reflectivity(1.0 - p_v2_blocked / (x * eff.eta_a_v2), "z");
}

Reflectivities estimate_reflectivities(const ReflectivityProbes& probes,
                                       const PathEfficiencies& eff, double consistency_tol) {
  Reflectivities r;
  r.x = estimate_x(probes.p_da, eff);
  r.y = estimate_y(probes.p_db, r.x, eff);
  r.z = estimate_z_from_v1(probes.p_v1_blocked, r.x, eff);
  if (probes.p_v2_blocked.has_value()) {
    const double z2 = estimate_z_from_v2(*probes.p_v2_blocked, r.x, eff);
    if (std::abs(z2 - r.z) > consistency_tol) {
      throw std::domain_error("inconsistent probes: z from V1 = " + std::to_string(r.z) +
                              ", z from V2 = " + std::to_string(z2));
    }
  }
  validate(r);
  return r;
}

ReflectivityProbes simulate_probes(const Reflectivities& refl, const PathEfficiencies& eff) {
  validate(refl);
  validate(eff);
  ReflectivityProbes p;
  p.p_da = refl.x * eff.eta_a_s;
  p.p_db = (1.0 - refl.x) * refl.y * eff.eta_b_y;
  p.p_v1_blocked = refl.x * refl.z * eff.eta_a_v1;
  p.p_v2_blocked = refl.x * (1.0 - refl.z) * eff.eta_a_v2;
  return p;
}

}  // namespace wcf
