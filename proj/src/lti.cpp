#include "tfspec/lti.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

#include "tfspec/errors.hpp"
#include "tfspec/numerics.hpp"

namespace tfspec {

namespace {

void trim_trailing_zeros(std::vector<double>& v) {
  while (v.size() > 1 && v.back() == 0.0) v.pop_back();
}

std::vector<std::complex<double>> poly_roots(const std::vector<double>& coeffs) {
  // coeffs ascending, leading coefficient nonzero.
  const std::size_t deg = coeffs.size() - 1;
  if (deg == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(deg),
                                                    static_cast<Eigen::Index>(deg));
  const double lead = coeffs.back();
  for (std::size_t i = 0; i + 1 < deg; ++i) {
    companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  for (std::size_t i = 0; i < deg; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
        -coeffs[i] / lead;
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("poly_roots: eigensolve did not converge");
  }
  std::vector<std::complex<double>> roots(deg);
  for (std::size_t i = 0; i < deg; ++i) {
    roots[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
  }
  return roots;
}

double max_pole_magnitude(const std::vector<std::complex<double>>& poles) {
  double m = 0.0;
  for (const auto& p : poles) m = std::max(m, std::abs(p));
  return m;
}

double slowest_decay(const std::vector<std::complex<double>>& poles) {
  double s = std::numeric_limits<double>::infinity();
  for (const auto& p : poles) s = std::min(s, -p.real());
  return s;
}

// Controllable canonical realization with monic denominator.
struct Realization {
  std::vector<double> a;  // den coefficients a0..a_{n-1} after monic scaling
  std::vector<double> b;  // num coefficients, zero-padded to length n
  std::size_t n;

  void deriv(const std::vector<double>& x, double u, std::vector<double>& out) const {
    for (std::size_t i = 0; i + 1 < n; ++i) out[i] = x[i + 1];
    double acc = u;
    for (std::size_t i = 0; i < n; ++i) acc -= a[i] * x[i];
    out[n - 1] = acc;
  }

  double output(const std::vector<double>& x) const {
    double y = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) y += b[i] * x[i];
    return y;
  }
};

Realization realize(const RationalSystem& sys) {
  const std::vector<double>& num = sys.num();
  const std::vector<double>& den = sys.den();
  if (den.size() < 2) throw InputError("simulation: system has no dynamics (degree zero)");
  if (num.size() >= den.size()) {
    throw InputError("simulation: system must be strictly proper");
  }
  Realization r;
  r.n = den.size() - 1;
  const double lead = den.back();
  r.a.resize(r.n);
  for (std::size_t i = 0; i < r.n; ++i) r.a[i] = den[i] / lead;
  r.b.resize(num.size());
  for (std::size_t i = 0; i < num.size(); ++i) r.b[i] = num[i] / lead;
  return r;
}

SampledSignal simulate(const RationalSystem& sys, double t_end, double dt, bool step_input) {
  const Realization r = realize(sys);
  const double pmax = max_pole_magnitude(sys.poles());
  if (dt * pmax > 0.1 + 1e-12) {
    throw InputError("simulation: dt does not resolve the fastest pole (dt*max|pole| > 0.1)");
  }
  const std::size_t steps = static_cast<std::size_t>(std::ceil(t_end / dt));
  if (steps < 15) throw InputError("simulation: horizon shorter than 16 samples");

  std::vector<double> x(r.n, 0.0);
  const double u = step_input ? 1.0 : 0.0;
  if (!step_input) x[r.n - 1] = 1.0;  // impulse: state jump B

  std::vector<double> y(steps + 1);
  y[0] = r.output(x);
  std::vector<double> k1(r.n), k2(r.n), k3(r.n), k4(r.n), tmp(r.n);
  for (std::size_t s = 0; s < steps; ++s) {
    r.deriv(x, u, k1);
    for (std::size_t i = 0; i < r.n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    r.deriv(tmp, u, k2);
    for (std::size_t i = 0; i < r.n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    r.deriv(tmp, u, k3);
    for (std::size_t i = 0; i < r.n; ++i) tmp[i] = x[i] + dt * k3[i];
    r.deriv(tmp, u, k4);
    for (std::size_t i = 0; i < r.n; ++i) {
      x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    y[s + 1] = r.output(x);
  }
  return SampledSignal::create(0.0, dt, std::move(y));
}

// Quadratic refinement of a sampled extremum around index i.
double refine_peak_value(const std::vector<double>& v, std::size_t i) {
  if (i == 0 || i + 1 >= v.size()) return v[i];
  const double d1 = v[i + 1] - v[i - 1];
  const double d2 = v[i + 1] - 2.0 * v[i] + v[i - 1];
  if (d2 == 0.0) return v[i];
  return v[i] - d1 * d1 / (8.0 * d2);
}

double refine_peak_time(const SampledSignal& sig, std::size_t i) {
  const std::vector<double>& v = sig.values;
  if (i == 0 || i + 1 >= v.size()) return sig.t(i);
  const double d1 = v[i + 1] - v[i - 1];
  const double d2 = v[i + 1] - 2.0 * v[i] + v[i - 1];
  if (d2 == 0.0) return sig.t(i);
  return sig.t(i) - 0.5 * d1 / d2 * sig.dt;
}

// First time the sampled curve crosses `level` upward, linearly interpolated.
std::optional<double> first_crossing(const SampledSignal& sig, double level) {
  const std::vector<double>& v = sig.values;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (v[i - 1] < level && v[i] >= level) {
      const double theta = (level - v[i - 1]) / (v[i] - v[i - 1]);
      return sig.t(i - 1) + theta * sig.dt;
    }
  }
  return std::nullopt;
}

}  // namespace

RationalSystem RationalSystem::create(std::vector<double> num, std::vector<double> den) {
  trim_trailing_zeros(num);
  trim_trailing_zeros(den);
  if (den.empty() || (den.size() == 1 && den[0] == 0.0)) {
    throw InputError("RationalSystem: denominator is zero");
  }
  bool num_nonzero = false;
  for (double v : num) num_nonzero |= (v != 0.0);
  if (!num_nonzero) throw InputError("RationalSystem: numerator is zero");
  if (num.size() > den.size()) throw InputError("RationalSystem: improper (deg num > deg den)");
  if (den.front() == 0.0) {
    throw InputError("RationalSystem: denominator constant term is zero (pole at s = 0)");
  }
  for (double v : num) {
    if (!std::isfinite(v)) throw InputError("RationalSystem: non-finite coefficient");
  }
  for (double v : den) {
    if (!std::isfinite(v)) throw InputError("RationalSystem: non-finite coefficient");
  }

  RationalSystem sys;
  sys.num_ = std::move(num);
  sys.den_ = std::move(den);
  sys.poles_ = poly_roots(sys.den_);
  for (const auto& p : sys.poles_) {
    if (!(p.real() < 0.0)) {
      throw UnstableSystemError("RationalSystem: pole with nonnegative real part");
    }
  }
  return sys;
}

std::complex<double> RationalSystem::eval(std::complex<double> s) const {
  auto horner = [&s](const std::vector<double>& c) {
    std::complex<double> acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * s + c[i];
    return acc;
  };
  return horner(num_) / horner(den_);
}

double RationalSystem::magnitude(double omega) const {
  return std::abs(eval(std::complex<double>(0.0, omega)));
}

RationalSystem second_order_system(const SecondOrderParams& p) {
  if (!(p.zeta > 0.0 && p.zeta < 1.0)) {
    throw InputError("second_order_system: zeta must lie in (0, 1)");
  }
  if (!(p.omega0 > 0.0)) throw InputError("second_order_system: omega0 must be positive");
  const double w2 = p.omega0 * p.omega0;
  return RationalSystem::create({w2}, {w2, 2.0 * p.zeta * p.omega0, 1.0});
}

SampledSignal impulse_response(const RationalSystem& sys, double t_end, double dt) {
  return simulate(sys, t_end, dt, false);
}

SampledSignal step_response(const RationalSystem& sys, double t_end, double dt) {
  return simulate(sys, t_end, dt, true);
}

StepMetrics step_metrics(const RationalSystem& sys, double settling_band) {
  const double h0 = sys.dc_gain();
  if (h0 == 0.0) throw InputError("step_metrics: zero dc gain");
  if (!(settling_band > 0.0 && settling_band < 1.0)) {
    throw InputError("step_metrics: settling band must lie in (0, 1)");
  }

  const double sigma = slowest_decay(sys.poles());
  const double pmax = max_pole_magnitude(sys.poles());
  const double t_end = 30.0 / sigma;
  double dt = 0.01 / pmax;
  const double max_steps = 2.0e6;
  if (t_end / dt > max_steps) dt = t_end / max_steps;
  if (dt * pmax > 0.1) {
    throw InputError("step_metrics: pole spread too stiff for the step budget");
  }

  const SampledSignal step = step_response(sys, t_end, dt);
  const SampledSignal imp = impulse_response(sys, t_end, dt);

  // Everything below works on the step normalized to unit steady value.
  SampledSignal yn = step;
  for (double& v : yn.values) v /= h0;
  std::vector<double> hn(imp.values.size());
  for (std::size_t i = 0; i < hn.size(); ++i) hn[i] = imp.values[i] / h0;

  StepMetrics m;
  m.steady_state = h0;
  m.settling_band = settling_band;

  std::size_t imax = 0;
  for (std::size_t i = 1; i < hn.size(); ++i) {
    if (hn[i] > hn[imax]) imax = i;
  }
  const double h_peak = refine_peak_value(hn, imax);
  if (!(h_peak > 0.0)) throw InputError("step_metrics: normalized impulse has no positive peak");
  m.t_r_slope = 1.0 / h_peak;

  const auto t10 = first_crossing(yn, 0.1);
  const auto t90 = first_crossing(yn, 0.9);
  if (t10 && t90 && *t90 >= *t10) m.t_r_1090 = *t90 - *t10;
  m.t_r_full = first_crossing(yn, 1.0);

  std::size_t ymax = 0;
  for (std::size_t i = 1; i < yn.values.size(); ++i) {
    if (yn.values[i] > yn.values[ymax]) ymax = i;
  }
  const double peak_value = refine_peak_value(yn.values, ymax);
  if (peak_value > 1.0 + 1e-9 && ymax + 1 < yn.values.size()) {
    m.t_p = refine_peak_time(yn, ymax);
    m.overshoot = peak_value - 1.0;
  }

  // Last exit from the settling band, scanned from the end.
  const std::vector<double>& v = yn.values;
  std::optional<double> ts;
  for (std::size_t i = v.size(); i-- > 1;) {
    if (std::abs(v[i] - 1.0) > settling_band) {
      const double prev = v[i];
      const double next = (i + 1 < v.size()) ? v[i + 1] : v[i];
      const double edge = (prev > 1.0) ? 1.0 + settling_band : 1.0 - settling_band;
      double theta = 0.0;
      if (next != prev) theta = (edge - prev) / (next - prev);
      theta = std::clamp(theta, 0.0, 1.0);
      ts = yn.t(i) + theta * dt;
      break;
    }
  }
  m.t_s = ts;

  double hn_peak = 0.0;
  for (double x : hn) hn_peak = std::max(hn_peak, std::abs(x));
  m.horizon_ok = std::abs(hn.back()) < 1e-6 * hn_peak &&
                 std::abs(v.back() - 1.0) < 0.2 * settling_band;
  return m;
}

double bandwidth_integral(const RationalSystem& sys) {
  if (sys.dc_gain() == 0.0) throw InputError("bandwidth_integral: zero dc gain");
  if (sys.relative_degree() < 2) {
    throw NonIntegrableError(
        "bandwidth_integral: |H(jw)| is not integrable (relative degree below 2)");
  }

  double omega_ref = max_pole_magnitude(sys.poles());
  if (sys.num().size() > 1) {
    for (const auto& z : poly_roots(sys.num())) omega_ref = std::max(omega_ref, std::abs(z));
  }
  if (omega_ref <= 0.0) omega_ref = 1.0;

  auto f = [&sys](double w) { return sys.magnitude(w); };

  // Rough scale estimate to set the absolute tolerance.
  double rough = 0.0;
  {
    const int n0 = 64;
    for (int i = 0; i < n0; ++i) {
      const double w = 2.0 * omega_ref * (i + 0.5) / n0;
      rough += f(w) * 2.0 * omega_ref / n0;
    }
    rough = std::max(rough, std::abs(sys.dc_gain()) * omega_ref);
  }
  const double tol = 1e-9 * rough;

  // Linear panels through the pole/zero region, logarithmic panels beyond.
  double integral = 0.0;
  const int linear_panels = 32;
  for (int i = 0; i < linear_panels; ++i) {
    const double a = 2.0 * omega_ref * i / linear_panels;
    const double b = 2.0 * omega_ref * (i + 1) / linear_panels;
    integral += integrate_adaptive(f, a, b, tol / linear_panels);
  }
  const double omega_top = 1e4 * omega_ref;
  double a = 2.0 * omega_ref;
  while (a < omega_top) {
    const double b = std::min(a * 2.0, omega_top);
    integral += integrate_adaptive(f, a, b, tol);
    a = b;
  }

  // Analytic tail from the leading-order decay |H| ~ g_inf / w^r.
  const double r = static_cast<double>(sys.relative_degree());
  const double g_inf = std::abs(sys.num().back() / sys.den().back());
  integral += g_inf * std::pow(omega_top, 1.0 - r) / (r - 1.0);

  return integral / (M_PI * std::abs(sys.dc_gain()));
}

double bandwidth_3db(const RationalSystem& sys, double omega_max) {
  const double target = std::abs(sys.dc_gain()) / std::sqrt(2.0);
  if (target == 0.0) throw InputError("bandwidth_3db: zero dc gain");

  double lo = 1e-6 * std::max(max_pole_magnitude(sys.poles()), 1e-30);
  if (sys.magnitude(lo) < target) {
    throw NoCrossingError("bandwidth_3db: |H| already below the 3db level near w = 0");
  }
  double hi = lo;
  while (sys.magnitude(hi) >= target) {
    hi *= 1.25;
    if (hi > omega_max) {
      throw NoCrossingError("bandwidth_3db: no 3db crossing below omega_max");
    }
  }
  lo = hi / 1.25;
  auto g = [&sys, target](double w) { return sys.magnitude(w) - target; };
  return find_root(g, lo, hi, 1e-9);
}

double rise_bandwidth_product(const RationalSystem& sys) {
  const StepMetrics m = step_metrics(sys);
  return m.t_r_slope * bandwidth_integral(sys);
}

double second_order_rise(const SecondOrderParams& p) {
  if (!(p.zeta > 0.0 && p.zeta < 1.0)) throw InputError("second_order_rise: zeta out of (0, 1)");
  if (!(p.omega0 > 0.0)) throw InputError("second_order_rise: omega0 must be positive");
  const double root = std::sqrt(1.0 - p.zeta * p.zeta);
  return (M_PI - std::atan(root / p.zeta)) / (p.omega0 * root);
}

}  // namespace tfspec
