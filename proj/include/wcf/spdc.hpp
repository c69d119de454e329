#pragma once
#include <Eigen/Dense>

namespace wcf {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Source description for the heralded photon-pair model. Lengths and
/// wavelengths in metres; refractive indices are constants taken at the
/// centre wavelengths, which linearizes the phase mismatch in the
/// frequencies. The waists only document the collimated-focus regime that
/// justifies factoring spatial from spectral degrees of freedom; nothing is
/// computed from them.
struct SourceParams {
  // Written as divisions by exact powers of ten so the values round trip
  // through the human-unit config form unchanged.
  double pump_center_wavelength = 770.0 / 1e9;
  double pump_bandwidth = 0.2 / 1e9;  // Gaussian amplitude sigma, wavelength units
  double crystal_length = 30.0 / 1e3;
  double poling_period = 46.2 / 1e6;
  double n_pump = 1.76;
  double n_signal = 1.73;
  double n_idler = 1.82;
  double signal_center_wavelength = 1541.5 / 1e9;
  double idler_center_wavelength = 1538.5 / 1e9;
  double pump_waist = 315.0 / 1e6;    // documentation only
  double signal_waist = 190.0 / 1e6;  // documentation only
  double idler_waist = 218.0 / 1e6;   // documentation only
};

void validate(const SourceParams& params);

/// Joint spectral amplitude gamma(omega_i, omega_s) on a square frequency
/// grid. Rows follow the idler axis, columns the signal axis. Normalized so
/// the squared amplitudes sum to 1.
struct JsaGrid {
  Eigen::VectorXd signal_freq;  // rad/s
  Eigen::VectorXd idler_freq;   // rad/s
  Eigen::MatrixXcd amplitude;
};

void validate(const JsaGrid& jsa);

/// Spectral decomposition of the pair state: weights are the normalized
/// squared singular values, schmidt_number K = 1 / sum(weights^2) and the
/// heralded single-photon purity is 1/K.
struct SchmidtResult {
  double schmidt_number = 1.0;
  double purity = 1.0;
  Eigen::VectorXd weights;
};

/// Width and coherence measures of the heralded photon.
struct SpectralSummaries {
  double signal_fwhm = 0.0;       // metres (wavelength FWHM of the marginal)
  double coherence_length = 0.0;  // metres, lambda_s^2 / FWHM
};

/// Pump envelope times phase-matching amplitude, sampled on axes spanning
/// +-window_sigmas pump bandwidths around the centre frequencies. The
/// phase-matching term is sinc(dk * crystal_length / 2) with dk taken
/// relative to the (quasi-phase-matched) operating point; see the
/// implementation note on the constant-index grating residual.
/// Requires grid_size >= 16 and window_sigmas > 0.
JsaGrid compute_jsa(const SourceParams& params, int grid_size = 512,
                    double window_sigmas = 4.0);

/// Rank-1 reference grid: the outer product of two Gaussians of the pump
/// bandwidth. Useful as a separability baseline (purity exactly 1).
JsaGrid separable_toy_jsa(const SourceParams& params, int grid_size = 512,
                          double window_sigmas = 4.0);

/// Singular-value decomposition of the amplitude matrix. Throws
/// std::runtime_error if the decomposition fails to converge.
SchmidtResult schmidt_analysis(const JsaGrid& jsa);

/// FWHM of the signal marginal spectrum (converted to wavelength at the grid
/// centre) and the derived coherence length lambda_s^2 / FWHM.
SpectralSummaries spectral_summaries(const JsaGrid& jsa);

}  // namespace wcf
