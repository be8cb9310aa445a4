#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace tfspec {

/**
 * Real time-domain signal on a uniform grid with cached energy measures.
 *
 * energy_l2 is the trapezoid value of the squared samples, norm_l1 the
 * trapezoid value of their absolute values; both are fixed at construction
 * and all window integrals use the same rule, so a window covering the whole
 * grid reproduces the cached value exactly.
 */
struct SampledSignal {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> values;
  double energy_l2 = 0.0;
  double norm_l1 = 0.0;

  static SampledSignal create(double t0, double dt, std::vector<double> values);

  std::size_t size() const { return values.size(); }
  double t(std::size_t i) const { return t0 + dt * static_cast<double>(i); }
  double t_end() const { return t(values.size() - 1); }
  double max_abs() const;

  // True when |h| at both grid ends has fallen below rel * max|h|.
  bool tail_decayed(double rel = 1e-8) const;
};

/// Complex frequency samples of a transform on a uniform grid.
struct SampledSpectrum {
  double omega0 = 0.0;
  double domega = 0.0;
  std::vector<std::complex<double>> values;
  // Set when the source signal had not decayed at its grid ends.
  bool tail_warning = false;

  std::size_t size() const { return values.size(); }
  double omega(std::size_t i) const { return omega0 + domega * static_cast<double>(i); }
  double omega_end() const { return omega(values.size() - 1); }

  // Trapezoid integral of |values|^2 over the whole grid.
  double total_power() const;
};

}  // namespace tfspec
