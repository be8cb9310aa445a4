#include "tfspec/gaussian.hpp"

#include <cmath>

#include "tfspec/errors.hpp"
#include "tfspec/numerics.hpp"

namespace tfspec {

namespace {

double rise_constant() {
  static const double k = erf_inv(0.9) - erf_inv(0.1);
  return k;
}

double settle_constant() {
  static const double k = erf_inv(0.97);
  return k;
}

}  // namespace

GaussianDesign GaussianDesign::create(double a) {
  if (!(a > 0.0)) throw InputError("GaussianDesign: a must be positive");
  return GaussianDesign{a};
}

double impulse(const GaussianDesign& d, double t) {
  return 2.0 * std::sqrt(d.a / M_PI) * std::exp(-d.a * t * t);
}

double step(const GaussianDesign& d, double t) {
  if (t < 0.0) throw InputError("step: t must be nonnegative");
  return std::erf(std::sqrt(d.a) * t);
}

double rise_time(const GaussianDesign& d) { return rise_constant() / std::sqrt(d.a); }

double settling_time(const GaussianDesign& d) { return settle_constant() / std::sqrt(d.a); }

double freq_std(const GaussianDesign& d) { return std::sqrt(2.0 * d.a); }

BandwidthProducts products(const GaussianDesign& d) {
  const double sw = freq_std(d);
  return BandwidthProducts{rise_time(d) * sw, settling_time(d) * sw};
}

GaussianDesign design_from_rise_time(double t_r) {
  if (!(t_r > 0.0)) throw InputError("design_from_rise_time: rise time must be positive");
  const double r = rise_constant() / t_r;
  return GaussianDesign::create(r * r);
}

GaussianDesign design_from_settling_time(double t_s) {
  if (!(t_s > 0.0)) throw InputError("design_from_settling_time: settling time must be positive");
  const double r = settle_constant() / t_s;
  return GaussianDesign::create(r * r);
}

GaussianDesign design_from_freq_std(double sigma_w) {
  if (!(sigma_w > 0.0)) throw InputError("design_from_freq_std: sigma_w must be positive");
  return GaussianDesign::create(sigma_w * sigma_w / 2.0);
}

SampledSignal sample_impulse(const GaussianDesign& d, std::size_t n, double span_sigmas) {
  // Width of h itself is 1/sqrt(2a); the grid spans +-span_sigmas of it.
  const double sigma_h = 1.0 / std::sqrt(2.0 * d.a);
  const double half = span_sigmas * sigma_h;
  const double dt = 2.0 * half / static_cast<double>(n - 1);
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = -half + dt * static_cast<double>(i);
    v[i] = impulse(d, t);
  }
  return SampledSignal::create(-half, dt, std::move(v));
}

}  // namespace tfspec
