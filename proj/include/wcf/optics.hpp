#pragma once
#include <complex>
#include <span>

namespace wcf {

/// Power reflection probabilities of the three tunable beam splitters.
/// x splits the source photon between the two parties, y feeds the decision
/// detector, z mixes the two verification arms. Each value lies in [0,1];
/// amplitudes carry the square roots.
struct Reflectivities {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

/// Composite transmission of each full optical path, detector efficiency
/// included. Naming: eta_<arm>_<terminal detector>. Dimensionless, in [0,1].
struct PathEfficiencies {
  double eta_a_s = 1.0;   // Alice arm -> switch -> D_A
  double eta_b_y = 1.0;   // Bob arm -> y splitter -> D_B
  double eta_a_v1 = 1.0;  // Alice arm -> z splitter -> D_V1
  double eta_a_v2 = 1.0;  // Alice arm -> z splitter -> D_V2
  double eta_b_v1 = 1.0;  // Bob arm -> z splitter -> D_V1
  double eta_b_v2 = 1.0;  // Bob arm -> z splitter -> D_V2
};

/// Interference quality of the verification step. Fast phase noise is folded
/// into the visibility; slow_phase is the residual slow drift in radians,
/// a single scalar per evaluation (time evolution is the caller's concern).
struct InterferenceModel {
  double visibility = 1.0;
  double slow_phase = 0.0;
};

/// Single-shot click probabilities of the three signal detectors. The
/// remainder 1 - (p_v1 + p_v2 + p_db) is photon loss.
struct DetectionProbabilities {
  double p_v1 = 0.0;
  double p_v2 = 0.0;
  double p_db = 0.0;
};

/// Creation-operator coefficients of the three output modes, up to the
/// irrelevant global phase: a1, a2 are the verification outputs, a3 the
/// decision-detector mode. |a1|^2 + |a2|^2 + |a3|^2 <= 1 (loss).
struct ModeAmplitudes {
  std::complex<double> a1;
  std::complex<double> a2;
  std::complex<double> a3;
};

/// Photon weight in each interferometer arm before the z splitter, and the
/// balance ratio xi = pi_alice / (pi_alice + pi_bob). Powers are expressed
/// through the V1-path composites; the shared detector factor cancels in xi.
struct ArmPowers {
  double pi_alice = 0.0;
  double pi_bob = 0.0;
  double xi = 0.0;
};

// Throw std::domain_error on out-of-range fields.
void validate(const Reflectivities& r);
void validate(const PathEfficiencies& e);
void validate(const InterferenceModel& m);

/// Propagates one photon through the three-splitter network at a fixed phase
/// difference between the arms. Sign convention: minus on the second
/// verification output; observable probabilities do not depend on it.
ModeAmplitudes propagate_amplitudes(const Reflectivities& refl, const PathEfficiencies& eff,
                                    double phase_difference);

/// Detector click probabilities with fast phase noise averaged into the
/// visibility and the slow phase entering through cos(slow_phase).
/// Results within 1e-12 of [0,1] are clamped; larger violations throw.
DetectionProbabilities detection_probabilities(const Reflectivities& refl,
                                               const PathEfficiencies& eff,
                                               const InterferenceModel& interf);

/// Arm powers feeding the verification splitter. Throws std::domain_error
/// when both powers vanish (xi undefined).
ArmPowers arm_powers(const Reflectivities& refl, const PathEfficiencies& eff);

/// Visibility left after averaging an interference pattern over the given
/// fast-phase samples: v = |mean of exp(i phi)|. Throws on empty input.
double effective_visibility(std::span<const double> fast_phase_samples);

/// Contrast ratio |p(0) - p(pi)| / (p(0) + p(pi)) of one verification
/// detector probed at slow phase 0 and pi. Throws when both are zero.
double visibility_from_probabilities(double p_at_zero, double p_at_pi);

namespace detail {
// Clamp p into [0,1] if within tol of the boundary; throw std::domain_error
// otherwise (a larger violation indicates an input bug, not roundoff).
double clamp_probability(double p, const char* what, double tol = 1e-12);
}  // namespace detail

}  // namespace wcf
