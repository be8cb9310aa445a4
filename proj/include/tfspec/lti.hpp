#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "tfspec/signal.hpp"

namespace tfspec {

/**
 * Stable rational transfer function given by numerator and denominator
 * coefficient lists in ascending powers of s. Construction trims trailing
 * zero coefficients, requires properness, a nonzero denominator constant
 * term, and strict left-half-plane poles.
 */
class RationalSystem {
 public:
  static RationalSystem create(std::vector<double> num, std::vector<double> den);

  const std::vector<double>& num() const { return num_; }
  const std::vector<double>& den() const { return den_; }
  const std::vector<std::complex<double>>& poles() const { return poles_; }

  double dc_gain() const { return num_.front() / den_.front(); }
  std::size_t order() const { return den_.size() - 1; }
  std::size_t relative_degree() const { return den_.size() - num_.size(); }
  std::complex<double> eval(std::complex<double> s) const;
  double magnitude(double omega) const;

 private:
  RationalSystem() = default;
  std::vector<double> num_, den_;
  std::vector<std::complex<double>> poles_;
};

/**
 * Transient metrics of the normalized step response. Metrics that a given
 * response does not exhibit (a peak time for a monotone step, a 0-100% rise
 * for a response that never reaches the steady value) are absent rather
 * than zero.
 */
struct StepMetrics {
  double t_r_slope = 0.0;            // steady value over the steepest step slope
  std::optional<double> t_r_1090;    // 10% to 90% rise time
  std::optional<double> t_r_full;    // first time the step reaches 100%
  std::optional<double> t_p;         // peak time
  std::optional<double> t_s;         // 3%-band settling time (last exit)
  double overshoot = 0.0;            // max positive deviation, normalized
  double steady_state = 0.0;         // H(0)
  double settling_band = 0.03;
  bool horizon_ok = true;            // simulated horizon captured the tail
};

struct SecondOrderParams {
  double zeta = 0.5;    // damping ratio, in (0, 1)
  double omega0 = 1.0;  // natural frequency, rad/s
};

/// H(s) = w0^2 / (s^2 + 2 zeta w0 s + w0^2).
RationalSystem second_order_system(const SecondOrderParams& p);

/**
 * Fixed-step fourth-order simulation of the impulse response on [0, t_end].
 * Requires a strictly proper system and dt * max|pole| <= 0.1.
 */
SampledSignal impulse_response(const RationalSystem& sys, double t_end, double dt);

/// Unit step response under the same scheme.
SampledSignal step_response(const RationalSystem& sys, double t_end, double dt);

/// All transient metrics from an internally sized simulation.
StepMetrics step_metrics(const RationalSystem& sys, double settling_band = 0.03);

/**
 * Integral bandwidth int_0^inf |H(jw)| dw / (pi |H(0)|). Requires relative
 * degree at least two; throws NonIntegrableError otherwise.
 */
double bandwidth_integral(const RationalSystem& sys);

/// First frequency where |H| falls to |H(0)|/sqrt(2).
double bandwidth_3db(const RationalSystem& sys, double omega_max = 1e9);

/// t_r_slope * integral bandwidth; at least one for any admissible system.
double rise_bandwidth_product(const RationalSystem& sys);

/// Closed-form 0-100% rise time of the underdamped second-order step.
double second_order_rise(const SecondOrderParams& p);

}  // namespace tfspec
