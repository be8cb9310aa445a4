#pragma once

#include <cstddef>

#include "tfspec/signal.hpp"

namespace tfspec {

/**
 * Gaussian impulse-response design h(t) = 2 sqrt(a/pi) e^{-a t^2}, the
 * monotonic-step optimum attaining equality in the variance uncertainty
 * bound. The parameter a trades response speed against spectral spread.
 */
struct GaussianDesign {
  double a = 1.0;  // 1/s^2

  static GaussianDesign create(double a);
};

/// h(t); normalized so the step tends to one.
double impulse(const GaussianDesign& d, double t);

/// Step response u(t) = erf(sqrt(a) t) for t >= 0.
double step(const GaussianDesign& d, double t);

/// 10-90% rise time, (erfinv(0.9) - erfinv(0.1)) / sqrt(a) = 1.07 / sqrt(a).
double rise_time(const GaussianDesign& d);

/// 3%-band settling time, erfinv(0.97) / sqrt(a) = 1.53 / sqrt(a).
double settling_time(const GaussianDesign& d);

/**
 * Width sqrt(2a) of the transform profile hhat(w) = 2 e^{-w^2 / 4a}, the
 * bandwidth measure under which the rise and settling products below are
 * the constants 1.52 and 2.17. Note this is sqrt(2) times the standard
 * deviation of the energy spectrum |hhat|^2 that variance_stats reports.
 */
double freq_std(const GaussianDesign& d);

struct BandwidthProducts {
  double rise_product;    // t_r * sigma_w, a-independent
  double settle_product;  // t_s * sigma_w, a-independent
};

BandwidthProducts products(const GaussianDesign& d);

GaussianDesign design_from_rise_time(double t_r);
GaussianDesign design_from_settling_time(double t_s);
GaussianDesign design_from_freq_std(double sigma_w);

/// Sampled impulse response on a symmetric grid of span_sigmas widths.
SampledSignal sample_impulse(const GaussianDesign& d, std::size_t n = 4096,
                             double span_sigmas = 10.0);

}  // namespace tfspec
