#include "tfspec/signal.hpp"

#include <algorithm>
#include <cmath>

#include "tfspec/errors.hpp"
#include "tfspec/numerics.hpp"

namespace tfspec {

SampledSignal SampledSignal::create(double t0, double dt, std::vector<double> values) {
  if (!(dt > 0.0)) throw InputError("SampledSignal: dt must be positive");
  if (values.size() < 16) throw InputError("SampledSignal: need at least 16 samples");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("SampledSignal: non-finite sample");
  }
  SampledSignal s;
  s.t0 = t0;
  s.dt = dt;
  s.values = std::move(values);

  std::vector<double> sq(s.values.size());
  std::vector<double> ab(s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    sq[i] = s.values[i] * s.values[i];
    ab[i] = std::abs(s.values[i]);
  }
  s.energy_l2 = trapezoid(sq, dt);
  s.norm_l1 = trapezoid(ab, dt);
  return s;
}

double SampledSignal::max_abs() const {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool SampledSignal::tail_decayed(double rel) const {
  const double m = max_abs();
  if (m == 0.0) return true;
  return std::abs(values.front()) < rel * m && std::abs(values.back()) < rel * m;
}

double SampledSpectrum::total_power() const {
  if (values.size() < 2) return 0.0;
  std::vector<double> p(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) p[i] = std::norm(values[i]);
  return trapezoid(p, domega);
}

}  // namespace tfspec
