#include "tfspec/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "tfspec/errors.hpp"

namespace tfspec {

QuadratureRule gauss_legendre(std::size_t n) {
  if (n < 2) throw InputError("gauss_legendre: order must be at least 2");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);

  const double dn = static_cast<double>(n);
  const std::size_t m = (n + 1) / 2;
  for (std::size_t i = 1; i <= m; ++i) {
    // Tricomi initial guess, then Newton on P_n.
    double z = std::cos(M_PI * (static_cast<double>(i) - 0.25) / (dn + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0, p2 = 0.0;
      for (std::size_t j = 1; j <= n; ++j) {
        const double dj = static_cast<double>(j);
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * dj - 1.0) * z * p2 - (dj - 1.0) * p3) / dj;
      }
      pp = dn * (z * p1 - p2) / (z * z - 1.0);
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) < 1e-15) break;
    }
    rule.nodes[i - 1] = -z;
    rule.nodes[n - i] = z;
    const double w = 2.0 / ((1.0 - z * z) * pp * pp);
    rule.weights[i - 1] = w;
    rule.weights[n - i] = w;
  }
  return rule;
}

double erf_inv(double y) {
  if (!(y > -1.0 && y < 1.0)) throw InputError("erf_inv: argument must lie in (-1, 1)");
  if (y == 0.0) return 0.0;

  // Winitzki approximation as the starting point.
  const double a = 0.147;
  const double ln1my2 = std::log(1.0 - y * y);
  const double term = 2.0 / (M_PI * a) + 0.5 * ln1my2;
  double x = std::copysign(std::sqrt(std::sqrt(term * term - ln1my2 / a) - term), y);

  // Newton steps on erf(x) - y.
  for (int i = 0; i < 4; ++i) {
    const double err = std::erf(x) - y;
    x -= err * 0.5 * std::sqrt(M_PI) * std::exp(x * x);
  }
  return x;
}

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_step(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, double m, double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_step(f, a, fa, b, fb, m, fm, whole, abs_tol, max_depth);
}

double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw InputError("find_root: interval does not bracket a root");
  for (int i = 0; i < 200; ++i) {
    // Secant proposal guarded by bisection.
    double mid = 0.5 * (lo + hi);
    const double denom = fhi - flo;
    if (denom != 0.0) {
      const double sec = lo - flo * (hi - lo) / denom;
      if (sec > lo && sec < hi) mid = sec;
    }
    const double fmid = f(mid);
    if (fmid == 0.0 || (hi - lo) <= rel_tol * std::max(1.0, std::abs(mid))) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
      fhi = fmid;
    }
  }
  return 0.5 * (lo + hi);
}

double trapezoid(const std::vector<double>& v, double dt) {
  if (v.size() < 2) return 0.0;
  double sum = 0.5 * (v.front() + v.back());
  for (std::size_t i = 1; i + 1 < v.size(); ++i) sum += v[i];
  return sum * dt;
}

namespace {

// Cumulative trapezoid value of the piecewise-linear integrand from the grid
// start to coordinate x (clamped).
double cumulative(const std::vector<double>& v, double t0, double dt, double x) {
  const std::size_t n = v.size();
  const double t_end = t0 + dt * static_cast<double>(n - 1);
  x = std::clamp(x, t0, t_end);
  const double s = (x - t0) / dt;
  std::size_t k = static_cast<std::size_t>(s);
  if (k >= n - 1) k = n - 2;
  const double theta = s - static_cast<double>(k);

  double sum = 0.0;
  for (std::size_t i = 0; i < k; ++i) sum += 0.5 * (v[i] + v[i + 1]);
  const double vx = v[k] + (v[k + 1] - v[k]) * theta;
  sum += 0.5 * (v[k] + vx) * theta;
  return sum * dt;
}

}  // namespace

double trapezoid_window(const std::vector<double>& v, double t0, double dt,
                        double a, double b) {
  if (v.size() < 2) return 0.0;
  if (b <= a) return 0.0;
  return cumulative(v, t0, dt, b) - cumulative(v, t0, dt, a);
}

double round_sig(double x, int digits) {
  if (x == 0.0 || !std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

}  // namespace tfspec
