#include "wcf/spdc.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wcf {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double sinc(double x) {
  if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
  return std::sin(x) / x;
}

double angular_frequency(double wavelength) { return kTwoPi * kSpeedOfLight / wavelength; }

Eigen::VectorXd axis(double center, double half_width, int n) {
  Eigen::VectorXd out(n);
  for (int i = 0; i < n; ++i) {
    out[i] = center - half_width + 2.0 * half_width * static_cast<double>(i) / (n - 1);
  }
  return out;
}

void check_grid_args(int grid_size, double window_sigmas) {
  if (grid_size < 16) throw std::domain_error("grid_size must be >= 16");
  if (!(window_sigmas > 0.0)) throw std::domain_error("window_sigmas must be > 0");
}

void normalize(JsaGrid& jsa) {
  const double total = jsa.amplitude.squaredNorm();
  if (!(total > 0.0)) throw std::domain_error("joint spectral amplitude vanishes on the grid");
  jsa.amplitude /= std::sqrt(total);
}

}  // namespace

void validate(const SourceParams& p) {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw std::domain_error(std::string(name) + " must be > 0");
  };
  positive(p.pump_center_wavelength, "pump_center_wavelength");
  positive(p.pump_bandwidth, "pump_bandwidth");
  positive(p.crystal_length, "crystal_length");
  positive(p.poling_period, "poling_period");
  positive(p.signal_center_wavelength, "signal_center_wavelength");
  positive(p.idler_center_wavelength, "idler_center_wavelength");
  if (p.n_pump < 1.0 || p.n_signal < 1.0 || p.n_idler < 1.0) {
    throw std::domain_error("refractive indices must be >= 1");
  }
}

void validate(const JsaGrid& jsa) {
  if (jsa.amplitude.rows() != jsa.idler_freq.size() ||
      jsa.amplitude.cols() != jsa.signal_freq.size()) {
    throw std::domain_error("JSA matrix dimensions do not match the axes");
  }
  if (std::abs(jsa.amplitude.squaredNorm() - 1.0) > 1e-9) {
    throw std::domain_error("JSA grid is not normalized");
  }
}

JsaGrid compute_jsa(const SourceParams& params, int grid_size, double window_sigmas) {
  validate(params);
  check_grid_args(grid_size, window_sigmas);

  const double w_p0 = angular_frequency(params.pump_center_wavelength);
  const double w_s0 = angular_frequency(params.signal_center_wavelength);
  const double w_i0 = angular_frequency(params.idler_center_wavelength);
  // Pump amplitude bandwidth converted from wavelength to angular frequency.
  const double sigma_p = kTwoPi * kSpeedOfLight * params.pump_bandwidth /
                         (params.pump_center_wavelength * params.pump_center_wavelength);

  auto mismatch = [&](double w_s, double w_i) {
    return (params.n_pump * (w_s + w_i) - params.n_signal * w_s - params.n_idler * w_i) /
               kSpeedOfLight -
           kTwoPi / params.poling_period;
  };
  // With constant indices the nominal grating leaves a large fixed residual
  // at the centre frequencies (the indices are rounded values, so
  // k_p - k_s - k_i - 2pi/Lambda != 0 there, by thousands of sinc widths).
  // The operating point is quasi-phase-matched by construction, so the
  // mismatch is evaluated relative to its value at the centre.
  const double residual = mismatch(w_s0, w_i0);

  JsaGrid jsa;
  const double half_width = window_sigmas * sigma_p;
  jsa.signal_freq = axis(w_s0, half_width, grid_size);
  jsa.idler_freq = axis(w_i0, half_width, grid_size);
  jsa.amplitude.resize(grid_size, grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double w_i = jsa.idler_freq[i];
    for (int j = 0; j < grid_size; ++j) {
      const double w_s = jsa.signal_freq[j];
      const double detuning = w_s + w_i - w_p0;
      const double pump = std::exp(-detuning * detuning / (2.0 * sigma_p * sigma_p));
      const double pm = sinc((mismatch(w_s, w_i) - residual) * params.crystal_length / 2.0);
      jsa.amplitude(i, j) = pump * pm;
    }
  }
  normalize(jsa);
  return jsa;
}

JsaGrid separable_toy_jsa(const SourceParams& params, int grid_size, double window_sigmas) {
  validate(params);
  check_grid_args(grid_size, window_sigmas);

  const double w_s0 = angular_frequency(params.signal_center_wavelength);
  const double w_i0 = angular_frequency(params.idler_center_wavelength);
  const double sigma_p = kTwoPi * kSpeedOfLight * params.pump_bandwidth /
                         (params.pump_center_wavelength * params.pump_center_wavelength);

  JsaGrid jsa;
  const double half_width = window_sigmas * sigma_p;
  jsa.signal_freq = axis(w_s0, half_width, grid_size);
  jsa.idler_freq = axis(w_i0, half_width, grid_size);
  Eigen::VectorXd gs(grid_size), gi(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    const double ds = jsa.signal_freq[i] - w_s0;
    const double di = jsa.idler_freq[i] - w_i0;
    gs[i] = std::exp(-ds * ds / (2.0 * sigma_p * sigma_p));
    gi[i] = std::exp(-di * di / (2.0 * sigma_p * sigma_p));
  }
  jsa.amplitude = (gi * gs.transpose()).cast<std::complex<double>>();
  normalize(jsa);
  return jsa;
}

SchmidtResult schmidt_analysis(const JsaGrid& jsa) {
  validate(jsa);
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(jsa.amplitude);
  if (svd.info() != Eigen::Success) {
    throw std::runtime_error("schmidt_analysis: singular value decomposition failed");
  }
  Eigen::VectorXd weights = svd.singularValues().array().square();
  const double total = weights.sum();
  if (!(total > 0.0)) {
    throw std::runtime_error("schmidt_analysis: degenerate spectrum");
  }
  weights /= total;
  SchmidtResult result;
  result.weights = weights;
  result.schmidt_number = 1.0 / weights.array().square().sum();
  result.purity = 1.0 / result.schmidt_number;
  return result;
}

SpectralSummaries spectral_summaries(const JsaGrid& jsa) {
  validate(jsa);
  const Eigen::VectorXd marginal = jsa.amplitude.cwiseAbs2().colwise().sum();
  const int n = static_cast<int>(marginal.size());

  int peak = 0;
  marginal.maxCoeff(&peak);
  const double half = marginal[peak] / 2.0;

  // Linear interpolation of the half-maximum crossings; fall back to the
  // window edge if a flank never drops below half maximum.
  auto cross = [&](int from, int step) {
    int i = from;
    while (i + step >= 0 && i + step < n && marginal[i + step] >= half) i += step;
    const int j = i + step;
    if (j < 0 || j >= n) return jsa.signal_freq[i];
    const double t = (half - marginal[i]) / (marginal[j] - marginal[i]);
    return jsa.signal_freq[i] + t * (jsa.signal_freq[j] - jsa.signal_freq[i]);
  };
  const double fwhm_omega = std::abs(cross(peak, +1) - cross(peak, -1));

  const double w_center = 0.5 * (jsa.signal_freq[0] + jsa.signal_freq[n - 1]);
  const double lambda_s = kTwoPi * kSpeedOfLight / w_center;
  SpectralSummaries out;
  // d(lambda) = lambda^2/(2 pi c) d(omega)
  out.signal_fwhm = lambda_s * lambda_s * fwhm_omega / (kTwoPi * kSpeedOfLight);
  out.coherence_length =
      out.signal_fwhm > 0.0 ? lambda_s * lambda_s / out.signal_fwhm : 0.0;
  return out;
}

}  // namespace wcf
