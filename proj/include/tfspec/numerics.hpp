#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace tfspec {

struct QuadratureRule {
  std::vector<double> nodes;    // ascending on [-1, 1]
  std::vector<double> weights;  // positive, sum to 2
};

// Gauss-Legendre rule of order n, Newton iteration on the Legendre recurrence.
QuadratureRule gauss_legendre(std::size_t n);

// Inverse error function on (-1, 1), Newton-refined to near machine precision.
double erf_inv(double y);

// Adaptive Simpson integration with absolute tolerance.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol, int max_depth = 48);

// Root of f on a bracket [lo, hi] with f(lo), f(hi) of opposite sign.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-12);

// Trapezoid integral of uniform samples with spacing dt.
double trapezoid(const std::vector<double>& v, double dt);

// Trapezoid integral restricted to the window [a, b] on the grid t0 + i*dt.
// Window edges between samples are handled by linear interpolation of the
// integrand, so a window covering the whole grid reproduces trapezoid().
double trapezoid_window(const std::vector<double>& v, double t0, double dt,
                        double a, double b);

// Round to the given number of significant decimal digits.
double round_sig(double x, int digits);

}  // namespace tfspec
