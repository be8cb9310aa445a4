#include "tfspec/concentration.hpp"

#include <cmath>
#include <complex>

#include "tfspec/errors.hpp"
#include "tfspec/numerics.hpp"

namespace tfspec {

ConcentrationPair ConcentrationPair::create(double alpha, double beta) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw InputError("ConcentrationPair: alpha outside [0, 1]");
  if (!(beta >= 0.0 && beta <= 1.0)) throw InputError("ConcentrationPair: beta outside [0, 1]");
  return ConcentrationPair{alpha, beta};
}

SampledSpectrum transform(const SampledSignal& h, double omega_max, std::size_t n_freq) {
  if (!(omega_max > 0.0)) throw InputError("transform: omega_max must be positive");
  if (n_freq < 3) throw InputError("transform: need at least 3 frequency samples");
  if (h.energy_l2 <= 0.0) throw ZeroEnergyError("transform: signal has zero energy");
  const double nyquist = M_PI / h.dt;
  if (omega_max > nyquist) {
    throw NyquistError("transform: omega_max exceeds the grid Nyquist rate pi/dt");
  }

  SampledSpectrum s;
  s.omega0 = -omega_max;
  s.domega = 2.0 * omega_max / static_cast<double>(n_freq - 1);
  s.values.resize(n_freq);
  s.tail_warning = !h.tail_decayed();

  const std::size_t n = h.size();
  for (std::size_t m = 0; m < n_freq; ++m) {
    const double w = s.omega(m);
    // Trapezoid weights; phase advanced by a stable rotation recurrence.
    const std::complex<double> rot = std::polar(1.0, -w * h.dt);
    std::complex<double> phase = std::polar(1.0, -w * h.t0);
    std::complex<double> acc = 0.5 * h.values[0] * phase;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      phase *= rot;
      acc += h.values[k] * phase;
    }
    phase *= rot;
    acc += 0.5 * h.values[n - 1] * phase;
    s.values[m] = acc * h.dt;
  }
  return s;
}

namespace {

std::vector<double> squared(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * v[i];
  return out;
}

std::vector<double> magnitude(const std::vector<std::complex<double>>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::abs(v[i]);
  return out;
}

std::vector<double> power(const std::vector<std::complex<double>>& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::norm(v[i]);
  return out;
}

}  // namespace

double time_concentration(const SampledSignal& h, double t_lo, double t_hi) {
  if (!(t_lo <= t_hi)) throw InputError("time_concentration: t_lo must not exceed t_hi");
  if (h.energy_l2 <= 0.0) throw ZeroEnergyError("time_concentration: signal has zero energy");
  const double num = trapezoid_window(squared(h.values), h.t0, h.dt, t_lo, t_hi);
  return num / h.energy_l2;
}

double freq_concentration(const SampledSpectrum& s, double w_lo, double w_hi) {
  if (!(w_lo <= w_hi)) throw InputError("freq_concentration: w_lo must not exceed w_hi");
  const std::vector<double> p = power(s.values);
  const double denom = trapezoid(p, s.domega);
  if (denom <= 0.0) throw ZeroEnergyError("freq_concentration: spectrum has zero energy");
  return trapezoid_window(p, s.omega0, s.domega, w_lo, w_hi) / denom;
}

double l1_fraction_time(const SampledSignal& h, double t_lo, double t_hi) {
  if (!(t_lo <= t_hi)) throw InputError("l1_fraction_time: t_lo must not exceed t_hi");
  if (h.norm_l1 <= 0.0) throw ZeroEnergyError("l1_fraction_time: signal has zero L1 norm");
  std::vector<double> ab(h.values.size());
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] = std::abs(h.values[i]);
  return trapezoid_window(ab, h.t0, h.dt, t_lo, t_hi) / h.norm_l1;
}

double l1_fraction_freq(const SampledSpectrum& s, double w_lo, double w_hi) {
  if (!(w_lo <= w_hi)) throw InputError("l1_fraction_freq: w_lo must not exceed w_hi");
  const std::vector<double> mag = magnitude(s.values);
  const double denom = trapezoid(mag, s.domega);
  if (denom <= 0.0) throw ZeroEnergyError("l1_fraction_freq: spectrum has zero L1 norm");
  return trapezoid_window(mag, s.omega0, s.domega, w_lo, w_hi) / denom;
}

double band_energy_fraction(const SampledSignal& h, double w, std::size_t n_freq) {
  if (!(w > 0.0)) throw InputError("band_energy_fraction: band edge must be positive");
  const SampledSpectrum s = transform(h, w, n_freq);
  const double band = s.total_power();
  const double total = 2.0 * M_PI * h.energy_l2;
  double frac = band / total;
  if (frac > 1.0) frac = 1.0;
  return frac;
}

VarianceStats variance_stats(const SampledSignal& h, const SampledSpectrum& s) {
  if (h.energy_l2 <= 0.0) throw ZeroEnergyError("variance_stats: signal has zero energy");

  const std::size_t n = h.size();
  std::vector<double> p2(n), tp2(n), ttp2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = h.t(i);
    p2[i] = h.values[i] * h.values[i];
    tp2[i] = t * p2[i];
    ttp2[i] = t * t * p2[i];
  }
  // The second-moment integrand must have decayed, otherwise the variance is
  // a grid artifact.
  double peak2 = 0.0;
  for (double v : ttp2) peak2 = std::max(peak2, std::abs(v));
  if (peak2 > 0.0 &&
      (std::abs(ttp2.front()) > 1e-6 * peak2 || std::abs(ttp2.back()) > 1e-6 * peak2)) {
    throw TailDecayError("variance_stats: t^2 h^2 has not decayed at the grid ends");
  }

  VarianceStats v;
  const double e = trapezoid(p2, h.dt);
  v.mean_time = trapezoid(tp2, h.dt) / e;
  v.var_time = trapezoid(ttp2, h.dt) / e - v.mean_time * v.mean_time;

  const std::size_t m = s.size();
  std::vector<double> q2(m), wq2(m), wwq2(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double w = s.omega(i);
    q2[i] = std::norm(s.values[i]);
    wq2[i] = w * q2[i];
    wwq2[i] = w * w * q2[i];
  }
  double qpeak = 0.0;
  for (double x : wwq2) qpeak = std::max(qpeak, std::abs(x));
  if (qpeak > 0.0 &&
      (std::abs(wwq2.front()) > 1e-4 * qpeak || std::abs(wwq2.back()) > 1e-4 * qpeak)) {
    throw TailDecayError("variance_stats: w^2 |hhat|^2 has not decayed at the grid ends");
  }
  const double ef = trapezoid(q2, s.domega);
  if (ef <= 0.0) throw ZeroEnergyError("variance_stats: spectrum has zero energy");
  v.mean_freq = trapezoid(wq2, s.domega) / ef;
  v.var_freq = trapezoid(wwq2, s.domega) / ef - v.mean_freq * v.mean_freq;

  if (v.var_time < 0.0) v.var_time = 0.0;
  if (v.var_freq < 0.0) v.var_freq = 0.0;
  return v;
}

double heisenberg_product(const VarianceStats& v) { return v.var_time * v.var_freq; }

}  // namespace tfspec
