#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tfspec/concentration.hpp"
#include "tfspec/lti.hpp"
#include "tfspec/pswf.hpp"
#include "tfspec/signal.hpp"

namespace tfspec {

/**
 * User-declared control specifications submitted for compatibility checking.
 * The horizon T is read as the peak time of the step response; deviation is
 * the signed offset of the normalized step from its unit steady value at T;
 * energy is the impulse-response energy. The bandwidth constraint enters
 * either through the band edge W (which fixes c = W*T/2 and the largest
 * concentration eigenvalue) or through a direct band concentration beta.
 */
struct SpecSheet {
  double horizon = 0.0;    // T, seconds
  double deviation = 0.0;  // delta(T), dimensionless
  double energy = 0.0;     // E, 1/s
  std::optional<double> band_edge;  // W, rad/s
  std::optional<double> beta;       // in (0, 1]
  std::optional<double> l1_energy;  // E1, dimensionless

  void validate() const;
};

struct CheckDetail {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  bool pass = true;
  std::string note;
};

/// Outcome of a feasibility test. margin is the slack of the governing
/// inequality (radians for the arccos tests); feasible iff it is positive.
struct Verdict {
  bool feasible = false;
  double margin = 0.0;
  std::string governing_test;
  std::vector<CheckDetail> details;
};

struct FeasibilityOptions {
  double slack = 1e-9;           // strictness margin for the strict inequalities
  std::size_t quad_order = 128;  // discretization order for lambda0
  // Measured frequency fractions for the Chalk bounds. When absent the
  // bounds are reported against the worst case (fraction one) and a failure
  // there is inconclusive rather than governing.
  std::optional<double> beta1;
  std::optional<double> beta1_prime;
};

/**
 * Admissibility of a measured concentration pair at a given c:
 * arccos(alpha) + arccos(beta) >= arccos(sqrt(lambda0)). The corner pairs
 * (1,0) and (0,1) are excluded by the theorem and rejected.
 */
Verdict admissible(const ConcentrationPair& pair, const TimeBandwidthProduct& c,
                   std::size_t quad_order = 128);
Verdict admissible(const ConcentrationPair& pair, double lambda0);

/**
 * Full specification check: the energy-budget precondition
 * (1 + delta)/sqrt(ET) <= 1, the quick necessary test
 * (1 + delta)/sqrt(ET) < sqrt(lambda0), the master inequality
 * arccos((1 + delta)/sqrt(ET)) + arccos(beta) > arccos(sqrt(lambda0)),
 * plus the pi/2 sufficient test and Chalk-style bounds as details.
 * With a band edge and no beta, beta defaults to one (fully band-limited).
 * With only beta, the verdict is decided by the pi/2 test when its
 * hypothesis holds; otherwise the band edge is required.
 */
Verdict spec_feasible(const SpecSheet& spec, const FeasibilityOptions& opt = {});

struct ExtremalOptions {
  double margin_budget = 2e-5;   // tolerable bias on the measured eq8 margin
  double min_half_span = 8.0;    // in slot-half units
  double max_half_span = 4.5e4;
  std::size_t slot_samples = 8193;  // fine sampling of the truncated part
};

/**
 * The equality-attaining signal h = p psi0 + q P_T psi0 for a target alpha,
 * sampled in slot units (slot [-1, 1], band (-c, c)), or in physical units
 * when c carries a band edge and slot length. The grid half-span adapts to
 * the 1/t energy tail of the band-limited extension so that grid-measured
 * concentrations resolve the equality to about 1e-4.
 */
struct ExtremalSignal {
  SampledSignal h;
  double p = 0.0;
  double q = 0.0;
  double lambda0 = 0.0;
  double slot_half = 1.0;            // physical half-length of the time slot
  double band = 1.0;                 // physical band edge
  ProlateSpectrum spectrum;
  std::vector<double> slot_values;   // psi0 finely sampled on the slot
  double slot_dt = 0.0;
};

ExtremalSignal extremal_signal(double alpha, const TimeBandwidthProduct& c,
                               const ExtremalOptions& opt = {});

struct MeasuredPair {
  double alpha = 0.0;
  double beta = 0.0;
  double margin = 0.0;  // arccos(alpha) + arccos(beta) - arccos(sqrt(lambda0))
};

/**
 * Concentration pair of a constructed extremal signal, measured by
 * quadrature: alpha^2 from the time grid, beta^2 through Parseval with the
 * out-of-band energy integrated from the compactly supported part.
 */
MeasuredPair extremal_measured_pair(const ExtremalSignal& ext);

/// Measured (alpha, beta) of an arbitrary signal for slot length T and band
/// edge W, suitable for signals with decaying spectra.
ConcentrationPair measure_pair(const SampledSignal& h, double slot_length, double band_edge,
                               std::size_t n_freq = 2049);

/**
 * Monotonicity of admissibility: a feasible pair stays feasible when both
 * components shrink. Returns the implication for the two given pairs;
 * throws when the ordering precondition is violated.
 */
bool downward_closure_check(const ConcentrationPair& pair, const ConcentrationPair& smaller,
                            double lambda0);

/// Minimal deviation bound E (1 - lambda0(c)) at the peak time.
double min_overshoot(const SpecSheet& spec, const TimeBandwidthProduct& c_at_tp,
                     std::size_t quad_order = 128);

/// Bound delta(t_p) * t_p on the gap between peak time and full rise time.
/// Diagnostic only; requires a response with a measured peak.
double peak_rise_gap(const StepMetrics& metrics);

/// If alpha^2 + beta^2 <= 1 then arccos(alpha) + arccos(beta) >= pi/2.
Verdict theorem51_check(const ConcentrationPair& pair);

/// The same statement with alpha replaced by (1 + delta)/sqrt(ET).
Verdict theorem52_check(const SpecSheet& spec);

/// Chalk-style margin W*T - 2 pi a1 b1 for measured fractions.
Verdict chalk_check(double slot_length, double band_edge, double a1, double b1);

struct ChalkBounds {
  double l2_lhs = 0.0;                // E W (T / (1 + delta))^2, compared to 2 pi beta1
  std::optional<double> l1_lhs;       // E1 W (T / (1 + delta)), compared to 2 pi beta1'
};

/// Left-hand sides of the Chalk-derived specification bounds; the L1 form
/// requires l1_energy and assumes T below the peak time with a positive
/// response on (0, T).
ChalkBounds chalk_spec_bounds(const SpecSheet& spec);

/**
 * Local uncertainty check with a user-supplied constant K' (the theorem's
 * constant is not derivable from the source material): reports
 * int_0^T h^2 vs K' sigma_w E T and (1 + delta(T))/T vs sqrt(K' sigma_w E).
 * Ratios are reported, never asserted.
 */
Verdict local_bound_check(const SampledSignal& h, double t_window, double k_prime,
                          const VarianceStats& v);

}  // namespace tfspec
