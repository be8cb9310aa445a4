#include "tfspec/feasibility.hpp"

#include <algorithm>
#include <cmath>

#include "tfspec/errors.hpp"
#include "tfspec/numerics.hpp"

namespace tfspec {

namespace {

double lambda0_of(const TimeBandwidthProduct& c, std::size_t quad_order) {
  return leading_eigenvalues(c, quad_order, 1)[0];
}

double admissibility_margin(double alpha, double beta, double lambda0) {
  return std::acos(alpha) + std::acos(beta) - std::acos(std::sqrt(lambda0));
}

CheckDetail detail(std::string name, double lhs, double rhs, double margin, bool pass,
                   std::string note = {}) {
  return CheckDetail{std::move(name), lhs, rhs, margin, pass, std::move(note)};
}

}  // namespace

void SpecSheet::validate() const {
  if (!(horizon > 0.0)) throw InputError("SpecSheet: T must be positive");
  if (!(energy > 0.0)) throw InputError("SpecSheet: E must be positive");
  if (!(1.0 + deviation > 0.0)) throw InputError("SpecSheet: 1 + delta must be positive");
  if (band_edge && !(*band_edge > 0.0)) throw InputError("SpecSheet: W must be positive");
  if (beta && !(*beta > 0.0 && *beta <= 1.0)) {
    throw InputError("SpecSheet: beta must lie in (0, 1]");
  }
  if (!band_edge && !beta) {
    throw InputError("SpecSheet: either W or beta must be given");
  }
  if (l1_energy && !(*l1_energy > 0.0)) throw InputError("SpecSheet: E1 must be positive");
}

Verdict admissible(const ConcentrationPair& pair, double lambda0) {
  if (!(lambda0 > 0.0 && lambda0 < 1.0)) {
    throw InputError("admissible: lambda0 must lie in (0, 1)");
  }
  const double a = pair.alpha;
  const double b = pair.beta;
  if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0)) {
    throw InputError("admissible: concentrations must lie in [0, 1]");
  }
  const double eps = 1e-12;
  if ((a >= 1.0 - eps && b <= eps) || (a <= eps && b >= 1.0 - eps)) {
    throw ExcludedPairError("admissible: the pairs (1,0) and (0,1) are excluded");
  }

  Verdict v;
  v.margin = admissibility_margin(a, b, lambda0);
  v.feasible = v.margin >= 0.0;
  v.governing_test = "eq8";
  v.details.push_back(detail("eq8", std::acos(a) + std::acos(b),
                             std::acos(std::sqrt(lambda0)), v.margin, v.feasible));
  return v;
}

Verdict admissible(const ConcentrationPair& pair, const TimeBandwidthProduct& c,
                   std::size_t quad_order) {
  return admissible(pair, lambda0_of(c, quad_order));
}

Verdict theorem51_check(const ConcentrationPair& pair) {
  Verdict v;
  const double hyp = pair.alpha * pair.alpha + pair.beta * pair.beta;
  if (hyp > 1.0) {
    v.feasible = true;
    v.margin = 0.0;
    v.governing_test = "thm51_not_applicable";
    v.details.push_back(detail("thm51_hypothesis", hyp, 1.0, 1.0 - hyp, false,
                               "alpha^2 + beta^2 exceeds 1; statement not applicable"));
    return v;
  }
  const double sum = std::acos(pair.alpha) + std::acos(pair.beta);
  v.margin = sum - M_PI / 2.0;
  v.feasible = v.margin >= -1e-12;
  v.governing_test = "thm51";
  v.details.push_back(detail("thm51", sum, M_PI / 2.0, v.margin, v.feasible));
  return v;
}

Verdict theorem52_check(const SpecSheet& spec) {
  if (!(spec.horizon > 0.0) || !(spec.energy > 0.0)) {
    throw InputError("theorem52_check: T and E must be positive");
  }
  const double x = (1.0 + spec.deviation) / std::sqrt(spec.energy * spec.horizon);
  const double beta = spec.beta.value_or(1.0);
  Verdict v;
  const double hyp = x * x + beta * beta;
  if (hyp > 1.0) {
    v.feasible = true;
    v.margin = 0.0;
    v.governing_test = "thm52_not_applicable";
    v.details.push_back(detail("thm52_hypothesis", hyp, 1.0, 1.0 - hyp, false,
                               "(1+delta)^2/(ET) + beta^2 exceeds 1; statement not applicable"));
    return v;
  }
  const double sum = std::acos(x) + std::acos(beta);
  v.margin = sum - M_PI / 2.0;
  v.feasible = v.margin >= -1e-12;
  v.governing_test = "thm52";
  v.details.push_back(detail("thm52", sum, M_PI / 2.0, v.margin, v.feasible));
  return v;
}

Verdict chalk_check(double slot_length, double band_edge, double a1, double b1) {
  if (!(a1 >= 0.0 && a1 <= 1.0 && b1 >= 0.0 && b1 <= 1.0)) {
    throw InputError("chalk_check: fractions must lie in [0, 1]");
  }
  Verdict v;
  const double lhs = slot_length * band_edge;
  const double rhs = 2.0 * M_PI * a1 * b1;
  v.margin = lhs - rhs;
  v.feasible = v.margin > 0.0;
  v.governing_test = "chalk";
  v.details.push_back(detail("chalk", lhs, rhs, v.margin, v.feasible));
  return v;
}

ChalkBounds chalk_spec_bounds(const SpecSheet& spec) {
  spec.validate();
  if (!spec.band_edge) throw MissingFieldError("chalk_spec_bounds: W is required");
  ChalkBounds b;
  const double ratio = spec.horizon / (1.0 + spec.deviation);
  b.l2_lhs = spec.energy * (*spec.band_edge) * ratio * ratio;
  if (spec.l1_energy) {
    b.l1_lhs = (*spec.l1_energy) * (*spec.band_edge) * ratio;
  } else {
    throw MissingFieldError("chalk_spec_bounds: E1 is required for the L1 bound");
  }
  return b;
}

Verdict local_bound_check(const SampledSignal& h, double t_window, double k_prime,
                          const VarianceStats& v) {
  if (!(k_prime > 0.0)) throw InputError("local_bound_check: K' must be positive");
  if (!(t_window > 0.0)) throw InputError("local_bound_check: T must be positive");
  const double sigma_w = std::sqrt(v.var_freq);
  const double e = h.energy_l2;
  if (e <= 0.0) throw ZeroEnergyError("local_bound_check: signal has zero energy");

  std::vector<double> sq(h.values.size());
  for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = h.values[i] * h.values[i];
  const double lhs32 = trapezoid_window(sq, h.t0, h.dt, 0.0, t_window);
  const double rhs32 = k_prime * sigma_w * e * t_window;

  const double u_t = trapezoid_window(h.values, h.t0, h.dt, 0.0, t_window);
  const double lhs33 = u_t / t_window;
  const double rhs33 = std::sqrt(k_prime * sigma_w * e);

  Verdict out;
  out.governing_test = "local_bound";
  out.details.push_back(detail("local_energy", lhs32, rhs32, rhs32 - lhs32, lhs32 <= rhs32,
                               "qualitative; constant K' supplied by the caller"));
  out.details.push_back(detail("local_rate", lhs33, rhs33, rhs33 - lhs33, lhs33 <= rhs33,
                               "qualitative; constant K' supplied by the caller"));
  out.margin = std::min(rhs32 - lhs32, rhs33 - lhs33);
  out.feasible = out.margin > 0.0;
  return out;
}

bool downward_closure_check(const ConcentrationPair& pair, const ConcentrationPair& smaller,
                            double lambda0) {
  if (!(smaller.alpha > 0.0 && smaller.beta > 0.0)) {
    throw InputError("downward_closure_check: smaller pair must be strictly positive");
  }
  if (smaller.alpha > pair.alpha || smaller.beta > pair.beta) {
    throw InputError("downward_closure_check: pairs are not ordered componentwise");
  }
  const Verdict big = admissible(pair, lambda0);
  if (!big.feasible) return true;
  return admissible(smaller, lambda0).feasible;
}

double min_overshoot(const SpecSheet& spec, const TimeBandwidthProduct& c_at_tp,
                     std::size_t quad_order) {
  if (!(spec.energy > 0.0)) throw InputError("min_overshoot: E must be positive");
  const double lambda0 = lambda0_of(c_at_tp, quad_order);
  return spec.energy * (1.0 - lambda0);
}

double peak_rise_gap(const StepMetrics& metrics) {
  if (!metrics.t_p) throw InputError("peak_rise_gap: no peak found in the step response");
  return metrics.overshoot * (*metrics.t_p);
}

Verdict spec_feasible(const SpecSheet& spec, const FeasibilityOptions& opt) {
  spec.validate();
  Verdict v;

  const double x = (1.0 + spec.deviation) / std::sqrt(spec.energy * spec.horizon);
  const bool budget_ok = x <= 1.0;
  v.details.push_back(detail("energy_budget", x, 1.0, 1.0 - x, budget_ok,
                             budget_ok ? "" : "spec demands more rise than the energy allows"));
  if (!budget_ok) {
    v.feasible = false;
    v.margin = 1.0 - x;
    v.governing_test = "energy_budget";
    return v;
  }

  if (!spec.band_edge) {
    // Without a band edge there is no lambda0; the pi/2 sufficient test can
    // still decide feasibility on its own since arccos(sqrt(lambda0)) < pi/2
    // for every c.
    Verdict t52 = theorem52_check(spec);
    if (t52.governing_test == "thm52" && t52.feasible) {
      v.feasible = true;
      v.margin = t52.margin;
      v.governing_test = "thm52";
      v.details.insert(v.details.end(), t52.details.begin(), t52.details.end());
      return v;
    }
    throw MissingFieldError(
        "spec_feasible: W is required (the pi/2 sufficient test does not apply)");
  }

  const TimeBandwidthProduct c =
      TimeBandwidthProduct::from_band_and_slot(*spec.band_edge, spec.horizon);
  const double lambda0 = lambda0_of(c, opt.quad_order);
  const double root = std::sqrt(lambda0);
  const double beta = spec.beta.value_or(1.0);

  const double m15 = root - x;
  const bool pass15 = m15 > opt.slack;
  v.details.push_back(detail("eq15", x, root, m15, pass15));

  const double lhs14 = std::acos(x) + std::acos(beta);
  const double rhs14 = std::acos(root);
  const double m14 = lhs14 - rhs14;
  const bool pass14 = m14 > opt.slack;
  v.details.push_back(detail("eq14", lhs14, rhs14, m14, pass14));

  {
    Verdict t52 = theorem52_check(spec);
    v.details.insert(v.details.end(), t52.details.begin(), t52.details.end());
  }

  // Chalk-derived necessary bounds. Without supplied fractions the threshold
  // uses the worst case beta1 = 1, which is conclusive only when it passes.
  bool chalk_ok = true;
  {
    const double ratio = spec.horizon / (1.0 + spec.deviation);
    const double l2_lhs = spec.energy * (*spec.band_edge) * ratio * ratio;
    const double b1 = opt.beta1.value_or(1.0);
    const double rhs = 2.0 * M_PI * b1;
    const bool pass = l2_lhs > rhs;
    v.details.push_back(detail("chalk_l2", l2_lhs, rhs, l2_lhs - rhs, pass,
                               opt.beta1 ? "" : "worst-case beta1 = 1; failure inconclusive"));
    if (opt.beta1 && !pass) chalk_ok = false;

    if (spec.l1_energy) {
      const double l1_lhs = (*spec.l1_energy) * (*spec.band_edge) * ratio;
      const double b1p = opt.beta1_prime.value_or(1.0);
      const double rhs1 = 2.0 * M_PI * b1p;
      const bool pass1 = l1_lhs > rhs1;
      v.details.push_back(
          detail("chalk_l1", l1_lhs, rhs1, l1_lhs - rhs1, pass1,
                 std::string("assumes a positive response below the peak time") +
                     (opt.beta1_prime ? "" : "; worst-case beta1' = 1, failure inconclusive")));
      if (opt.beta1_prime && !pass1) chalk_ok = false;
    }
  }

  if (!pass15) {
    v.feasible = false;
    v.margin = m15;
    v.governing_test = "eq15";
  } else if (!pass14) {
    v.feasible = false;
    v.margin = m14;
    v.governing_test = "eq14";
  } else if (!chalk_ok) {
    v.feasible = false;
    for (const CheckDetail& d : v.details) {
      if ((d.name == "chalk_l2" || d.name == "chalk_l1") && !d.pass) {
        v.margin = d.margin;
        v.governing_test = d.name;
        break;
      }
    }
  } else {
    v.feasible = true;
    v.margin = m14;
    v.governing_test = "eq14";
  }
  return v;
}

ConcentrationPair measure_pair(const SampledSignal& h, double slot_length, double band_edge,
                               std::size_t n_freq) {
  const double a2 = time_concentration(h, -slot_length / 2.0, slot_length / 2.0);
  const double b2 = band_energy_fraction(h, band_edge, n_freq);
  return ConcentrationPair::create(std::sqrt(std::min(a2, 1.0)), std::sqrt(std::min(b2, 1.0)));
}

ExtremalSignal extremal_signal(double alpha, const TimeBandwidthProduct& c,
                               const ExtremalOptions& opt) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("extremal_signal: alpha must lie in (0, 1)");
  }

  ExtremalSignal ext;
  ext.spectrum = compute_spectrum(c, 0, 128);
  const double lambda0 = ext.spectrum.eigenvalues[0];
  ext.lambda0 = lambda0;
  ext.p = std::sqrt((1.0 - alpha * alpha) / (1.0 - lambda0));
  ext.q = alpha / std::sqrt(lambda0) - ext.p;

  // The band-limited part decays like 1/t; the energy the grid misses beyond
  // half-span M is about (1 - alpha^2)/M, which biases alpha_measured by
  // alpha*(1-alpha^2)/(2M) and the eq8 margin by that over sqrt(1-alpha^2).
  // Size M so the bias stays within the budget, with a factor two of slack
  // for the oscillation-average approximation.
  const double a_eff = std::max(alpha, 0.2);
  double half = a_eff * std::sqrt(1.0 - alpha * alpha) / opt.margin_budget;
  half = std::clamp(half, opt.min_half_span, opt.max_half_span);
  const double cc = c.c();
  // Second-order trapezoid error on the band-c oscillation (c*dtau)^2/12
  // stays near 1e-5 at 18 samples per unit-c.
  const std::size_t per_unit = static_cast<std::size_t>(std::ceil(std::max(18.0 * cc, 32.0)));
  const std::size_t m_units = static_cast<std::size_t>(std::ceil(half));
  const double dtau = 1.0 / static_cast<double>(per_unit);
  const std::size_t n = 2 * m_units * per_unit + 1;

  const double sl = std::sqrt(lambda0);
  std::vector<double> values(n);
  const double tau0 = -static_cast<double>(m_units);

  // Far from the slot the kernel sum is evaluated through the angle-addition
  // identity so the per-node trig reduces to two calls per point.
  const std::size_t nq = ext.spectrum.quad_nodes.size();
  std::vector<double> cos_cx(nq), sin_cx(nq), wpsi(nq);
  for (std::size_t j = 0; j < nq; ++j) {
    cos_cx[j] = std::cos(cc * ext.spectrum.quad_nodes[j]);
    sin_cx[j] = std::sin(cc * ext.spectrum.quad_nodes[j]);
    wpsi[j] = ext.spectrum.quad_weights[j] * ext.spectrum.eigenvectors[0][j];
  }
  auto psi_far = [&](double tau) {
    const double s = std::sin(cc * tau);
    const double co = std::cos(cc * tau);
    double acc = 0.0;
    for (std::size_t j = 0; j < nq; ++j) {
      acc += wpsi[j] * (s * cos_cx[j] - co * sin_cx[j]) / (tau - ext.spectrum.quad_nodes[j]);
    }
    return acc / (M_PI * lambda0);
  };

  for (std::size_t i = 0; i < n; ++i) {
    const double tau = tau0 + dtau * static_cast<double>(i);
    const double psi =
        std::abs(tau) > 1.5 ? psi_far(tau) : eval_pswf_extended(ext.spectrum, 0, tau);
    if (std::abs(std::abs(tau) - 1.0) < 0.5 * dtau) {
      // h jumps at the slot edges; the midpoint value keeps the trapezoid
      // rule second-order across the jump cells.
      values[i] = sl * (ext.p + 0.5 * ext.q) * psi;
    } else if (std::abs(tau) < 1.0) {
      values[i] = sl * (ext.p + ext.q) * psi;
    } else {
      values[i] = sl * ext.p * psi;
    }
  }

  // Physical units when c carries them; fractions are invariant under the
  // relabeling.
  ext.slot_half = c.slot_length() ? *c.slot_length() / 2.0 : 1.0;
  ext.band = c.band_edge() ? *c.band_edge() : cc;
  ext.h = SampledSignal::create(tau0 * ext.slot_half, dtau * ext.slot_half, std::move(values));

  // Fine sampling of psi0 on the slot for the spectral-side measurement.
  ext.slot_dt = 2.0 / static_cast<double>(opt.slot_samples - 1);
  ext.slot_values.resize(opt.slot_samples);
  for (std::size_t i = 0; i < opt.slot_samples; ++i) {
    const double tau = -1.0 + ext.slot_dt * static_cast<double>(i);
    ext.slot_values[i] = eval_pswf(ext.spectrum, 0, std::clamp(tau, -1.0, 1.0));
  }
  return ext;
}

MeasuredPair extremal_measured_pair(const ExtremalSignal& ext) {
  // The band-limited part of h decays like 1/t, so the truncated time grid
  // cannot carry a 1e-4 energy balance. Instead measure through the band
  // picture: inside the band the transform is
  //   sqrt(lambda0) [ p psi0(nu/c)/(alpha0 c) + q uhat(nu) ],
  // outside it only the truncated part q uhat remains, with uhat the cos
  // transform of the compactly supported psi0. Everything reduces to
  // quadratures over finite intervals.
  const double cc = ext.spectrum.c.c();
  const double lambda0 = ext.lambda0;
  const double alpha0 = ext.spectrum.extension_constants[0];
  const std::size_t ns = ext.slot_values.size();

  auto uhat = [&](double nu) {
    double acc = 0.5 * (ext.slot_values[0] * std::cos(nu) +
                        ext.slot_values[ns - 1] * std::cos(nu));
    for (std::size_t i = 1; i + 1 < ns; ++i) {
      const double tau = -1.0 + ext.slot_dt * static_cast<double>(i);
      acc += ext.slot_values[i] * std::cos(nu * tau);
    }
    return acc * ext.slot_dt;
  };

  // Slot energy of psi0 (close to one by normalization, but measured).
  std::vector<double> sq(ns);
  for (std::size_t i = 0; i < ns; ++i) sq[i] = ext.slot_values[i] * ext.slot_values[i];
  const double s_in = trapezoid(sq, ext.slot_dt);

  // In-band energy integrand, even in nu.
  const std::size_t n_in = 2049;
  const double dnu_in = cc / static_cast<double>(n_in - 1);
  std::vector<double> g2(n_in), u2(n_in);
  for (std::size_t k = 0; k < n_in; ++k) {
    const double nu = dnu_in * static_cast<double>(k);
    const double u = uhat(nu);
    const double g = ext.p * eval_pswf(ext.spectrum, 0, nu / cc) / (alpha0 * cc) + ext.q * u;
    g2[k] = g * g;
    u2[k] = u * u;
  }
  const double in_band = 2.0 * trapezoid(g2, dnu_in);

  // Out-of-band energy of uhat by Parseval on the compact part; this avoids
  // quadrature of the slowly decaying oscillatory tail entirely.
  const double out_band = std::max(0.0, 2.0 * M_PI * s_in - 2.0 * trapezoid(u2, dnu_in));

  const double total = lambda0 * (in_band + ext.q * ext.q * out_band) / (2.0 * M_PI);

  MeasuredPair out;
  const double a2 = lambda0 * (ext.p + ext.q) * (ext.p + ext.q) * s_in / total;
  const double b2 = in_band / (in_band + ext.q * ext.q * out_band);
  out.alpha = std::sqrt(std::clamp(a2, 0.0, 1.0));
  out.beta = std::sqrt(std::clamp(b2, 0.0, 1.0));
  out.margin = admissibility_margin(out.alpha, out.beta, lambda0);
  return out;
}

}  // namespace tfspec
