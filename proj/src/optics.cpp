#include "wcf/optics.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace wcf {

namespace {

void check_unit_interval(double value, const char* name) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw std::domain_error(std::string(name) + " = " + std::to_string(value) +
                            " outside [0,1]");
  }
}

}  // namespace

void validate(const Reflectivities& r) {
  check_unit_interval(r.x, "reflectivity x");
  check_unit_interval(r.y, "reflectivity y");
  check_unit_interval(r.z, "reflectivity z");
}

void validate(const PathEfficiencies& e) {
  check_unit_interval(e.eta_a_s, "eta_a_s");
  check_unit_interval(e.eta_b_y, "eta_b_y");
  check_unit_interval(e.eta_a_v1, "eta_a_v1");
  check_unit_interval(e.eta_a_v2, "eta_a_v2");
  check_unit_interval(e.eta_b_v1, "eta_b_v1");
  check_unit_interval(e.eta_b_v2, "eta_b_v2");
}

void validate(const InterferenceModel& m) {
  check_unit_interval(m.visibility, "visibility");
  if (!std::isfinite(m.slow_phase)) {
    throw std::domain_error("slow_phase is not finite");
  }
}

double detail::clamp_probability(double p, const char* what, double tol) {
  if (p < 0.0) {
    if (p < -tol) {
      throw std::domain_error(std::string(what) + " = " + std::to_string(p) +
                              " below 0 beyond tolerance");
    }
    return 0.0;
  }
  if (p > 1.0) {
    if (p > 1.0 + tol) {
      throw std::domain_error(std::string(what) + " = " + std::to_string(p) +
                              " above 1 beyond tolerance");
    }
    return 1.0;
  }
  return p;
}

ModeAmplitudes propagate_amplitudes(const Reflectivities& refl, const PathEfficiencies& eff,
                                    double phase_difference) {
  validate(refl);
  validate(eff);
  if (!std::isfinite(phase_difference)) {
    throw std::domain_error("phase_difference is not finite");
  }
  const double x = refl.x, y = refl.y, z = refl.z;
  const std::complex<double> rot = std::polar(1.0, phase_difference);

  ModeAmplitudes out;
  out.a1 = std::sqrt(x * z * eff.eta_a_v1) +
           std::sqrt((1.0 - x) * y * (1.0 - z) * eff.eta_b_v1) * rot;
  out.a2 = -(std::sqrt(x * (1.0 - z) * eff.eta_a_v2) -
             std::sqrt((1.0 - x) * y * z * eff.eta_b_v2) * rot);
  out.a3 = std::sqrt((1.0 - x) * (1.0 - y) * eff.eta_b_y) * rot;
  return out;
}

DetectionProbabilities detection_probabilities(const Reflectivities& refl,
                                               const PathEfficiencies& eff,
                                               const InterferenceModel& interf) {
  validate(refl);
  validate(eff);
  validate(interf);
  const double x = refl.x, y = refl.y, z = refl.z;
  const double cross = 2.0 * interf.visibility * std::cos(interf.slow_phase) *
                       std::sqrt(x * (1.0 - x) * y * z * (1.0 - z));

  DetectionProbabilities out;
  out.p_v1 = detail::clamp_probability(
      x * z * eff.eta_a_v1 + (1.0 - x) * y * (1.0 - z) * eff.eta_b_v1 +
          cross * std::sqrt(eff.eta_a_v1 * eff.eta_b_v1),
      "p_v1");
  out.p_v2 = detail::clamp_probability(
      x * (1.0 - z) * eff.eta_a_v2 + (1.0 - x) * y * z * eff.eta_b_v2 -
          cross * std::sqrt(eff.eta_a_v2 * eff.eta_b_v2),
      "p_v2");
  out.p_db = detail::clamp_probability((1.0 - x) * (1.0 - y) * eff.eta_b_y, "p_db");
  return out;
}

ArmPowers arm_powers(const Reflectivities& refl, const PathEfficiencies& eff) {
  validate(refl);
  validate(eff);
  ArmPowers out;
  out.pi_alice = refl.x * eff.eta_a_v1;
  out.pi_bob = (1.0 - refl.x) * refl.y * eff.eta_b_v1;
  const double total = out.pi_alice + out.pi_bob;
  if (total <= 0.0) {
    throw std::domain_error("arm powers are both zero; balance ratio undefined");
  }
  out.xi = out.pi_alice / total;
  return out;
}

double effective_visibility(std::span<const double> fast_phase_samples) {
  if (fast_phase_samples.empty()) {
    throw std::domain_error("effective_visibility: empty sample sequence");
  }
  double c = 0.0, s = 0.0;
  for (double phi : fast_phase_samples) {
    c += std::cos(phi);
    s += std::sin(phi);
  }
  const double n = static_cast<double>(fast_phase_samples.size());
  c /= n;
  s /= n;
  return detail::clamp_probability(std::hypot(c, s), "effective visibility");
}

double visibility_from_probabilities(double p_at_zero, double p_at_pi) {
  if (p_at_zero < 0.0 || p_at_pi < 0.0) {
    throw std::domain_error("visibility_from_probabilities: negative probability");
  }
  const double total = p_at_zero + p_at_pi;
  if (total <= 0.0) {
    throw std::domain_error("visibility_from_probabilities: both probabilities zero");
  }
  return std::abs(p_at_zero - p_at_pi) / total;
}

}  // namespace wcf
