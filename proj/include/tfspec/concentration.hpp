#pragma once

#include <cstddef>

#include "tfspec/signal.hpp"

namespace tfspec {

/// Root-energy fractions (alpha, beta) of a signal in a time slot and a band.
struct ConcentrationPair {
  double alpha = 0.0;
  double beta = 0.0;

  static ConcentrationPair create(double alpha, double beta);
};

/// First and second moments of a signal and its transform, per the
/// variance-based uncertainty inequality. mean_freq is written xi to avoid
/// clashing with the damping ratio zeta used for second-order systems.
struct VarianceStats {
  double mean_time = 0.0;   // u, seconds
  double mean_freq = 0.0;   // xi, rad/s
  double var_time = 0.0;    // sigma_t^2
  double var_freq = 0.0;    // sigma_w^2
};

/**
 * Numerical Fourier transform hhat(w) = int h(t) e^{-iwt} dt, evaluated on a
 * uniform grid over [-omega_max, omega_max] with n_freq points.
 *
 * Throws NyquistError when omega_max exceeds pi/dt. When the signal has not
 * decayed at its grid ends the result carries tail_warning instead of being
 * rejected, since the transform itself is still well defined.
 */
SampledSpectrum transform(const SampledSignal& h, double omega_max, std::size_t n_freq);

/// Energy fraction of h in the window [t_lo, t_hi]; the alpha^2 measure.
double time_concentration(const SampledSignal& h, double t_lo, double t_hi);

/// Energy fraction of the spectrum in [w_lo, w_hi] against the grid total.
double freq_concentration(const SampledSpectrum& s, double w_lo, double w_hi);

/// Fraction of the L1 mass of |h| in the window.
double l1_fraction_time(const SampledSignal& h, double t_lo, double t_hi);

/// Fraction of the L1 mass of |hhat| in the window.
double l1_fraction_freq(const SampledSpectrum& s, double w_lo, double w_hi);

/**
 * Energy fraction of h inside the symmetric band (-w, w), the beta^2 measure,
 * with the total taken from the time-domain energy through Parseval rather
 * than from a truncated frequency grid. Accurate for signals whose spectra
 * decay slowly (sharp time truncations).
 */
double band_energy_fraction(const SampledSignal& h, double w, std::size_t n_freq = 2049);

/**
 * Means and variances per the uncertainty-theorem definitions. Throws
 * ZeroEnergyError on a null signal and TailDecayError when the second-moment
 * integrands have not decayed at the grid ends.
 */
VarianceStats variance_stats(const SampledSignal& h, const SampledSpectrum& s);

/// sigma_t^2 * sigma_w^2; at least 1/4 for any admissible signal.
double heisenberg_product(const VarianceStats& v);

}  // namespace tfspec
