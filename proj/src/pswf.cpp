#include "tfspec/pswf.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>

#include "tfspec/errors.hpp"
#include "tfspec/numerics.hpp"

namespace tfspec {

TimeBandwidthProduct TimeBandwidthProduct::from_c(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw InputError("TimeBandwidthProduct: c must be positive");
  TimeBandwidthProduct p;
  p.c_ = c;
  return p;
}

TimeBandwidthProduct TimeBandwidthProduct::from_band_and_slot(double band_edge,
                                                              double slot_length) {
  if (!(band_edge > 0.0)) throw InputError("TimeBandwidthProduct: band edge must be positive");
  if (!(slot_length > 0.0)) throw InputError("TimeBandwidthProduct: slot length must be positive");
  TimeBandwidthProduct p;
  p.c_ = band_edge * slot_length / 2.0;
  p.band_edge_ = band_edge;
  p.slot_length_ = slot_length;
  return p;
}

double KernelMatrix::trace() const {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += at(i, i);
  return s;
}

namespace {

// sin(c r) / (pi r) with the removable singularity at r = 0.
double sinc_kernel(double c, double r) {
  if (std::abs(r) < 1e-9) {
    const double cr = c * r;
    return c / M_PI * (1.0 - cr * cr / 6.0);
  }
  return std::sin(c * r) / (M_PI * r);
}

// d/dx of sin(c(x - y)) / (pi (x - y)) as a function of r = x - y.
double sinc_kernel_deriv(double c, double r) {
  if (std::abs(r) < 1e-6) {
    return -c * c * c * r / (3.0 * M_PI);
  }
  return (c * std::cos(c * r) - std::sin(c * r) / r) / (M_PI * r);
}

}  // namespace

KernelMatrix build_kernel(const TimeBandwidthProduct& c, std::size_t quad_order) {
  if (quad_order < 8) throw InputError("build_kernel: quad_order must be at least 8");
  const QuadratureRule rule = gauss_legendre(quad_order);
  const double cc = c.c();

  KernelMatrix m;
  m.n = quad_order;
  m.data.assign(quad_order * quad_order, 0.0);
  std::vector<double> sw(quad_order);
  for (std::size_t i = 0; i < quad_order; ++i) sw[i] = std::sqrt(rule.weights[i]);

  for (std::size_t i = 0; i < quad_order; ++i) {
    m.at(i, i) = rule.weights[i] * cc / M_PI;
    for (std::size_t j = i + 1; j < quad_order; ++j) {
      const double v = sw[i] * sinc_kernel(cc, rule.nodes[i] - rule.nodes[j]) * sw[j];
      m.at(i, j) = v;
      m.at(j, i) = v;
    }
  }
  return m;
}

namespace {

struct EigenSolveResult {
  QuadratureRule rule;
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd eigenvectors;
};

EigenSolveResult solve_kernel(const TimeBandwidthProduct& c, std::size_t quad_order,
                              bool need_vectors) {
  KernelMatrix km = build_kernel(c, quad_order);
  Eigen::Map<Eigen::MatrixXd> mat(km.data.data(), static_cast<Eigen::Index>(km.n),
                                  static_cast<Eigen::Index>(km.n));
  EigenSolveResult r;
  r.rule = gauss_legendre(quad_order);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
      mat, need_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("compute_spectrum: symmetric eigensolve did not converge");
  }
  r.eigenvalues = solver.eigenvalues();
  if (need_vectors) r.eigenvectors = solver.eigenvectors();
  return r;
}

}  // namespace

std::vector<double> leading_eigenvalues(const TimeBandwidthProduct& c,
                                        std::size_t quad_order, std::size_t count) {
  if (count == 0 || count > quad_order) {
    throw InputError("leading_eigenvalues: count must be in [1, quad_order]");
  }
  EigenSolveResult r = solve_kernel(c, quad_order, false);
  std::vector<double> out(count);
  const Eigen::Index n = r.eigenvalues.size();
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = r.eigenvalues[n - 1 - static_cast<Eigen::Index>(k)];
  }
  return out;
}

ProlateSpectrum compute_spectrum(const TimeBandwidthProduct& c, std::size_t n_max,
                                 std::size_t quad_order) {
  if (n_max + 1 > quad_order / 2) {
    throw InputError("compute_spectrum: n_max + 1 must not exceed quad_order / 2");
  }
  EigenSolveResult r = solve_kernel(c, quad_order, true);
  const Eigen::Index nq = r.eigenvalues.size();

  ProlateSpectrum s;
  s.c = c;
  s.quad_nodes = r.rule.nodes;
  s.quad_weights = r.rule.weights;
  s.eigenvalues.resize(n_max + 1);
  s.eigenvectors.resize(n_max + 1);
  s.extension_constants.assign(n_max + 1, 0.0);

  const double floor = 10.0 * std::numeric_limits<double>::epsilon();
  for (std::size_t mode = 0; mode <= n_max; ++mode) {
    const Eigen::Index col = nq - 1 - static_cast<Eigen::Index>(mode);
    const double lambda = r.eigenvalues[col];
    if (!(lambda > floor)) {
      throw ResolutionError("compute_spectrum: eigenvalue of mode " + std::to_string(mode) +
                            " is below 10*eps and cannot be resolved in double precision");
    }
    if (mode > 0 && !(lambda < s.eigenvalues[mode - 1])) {
      throw ConvergenceError("compute_spectrum: eigenvalues are not strictly ordered");
    }
    s.eigenvalues[mode] = lambda;

    // Back out psi at the nodes from the sqrt(w)-symmetrized eigenvector.
    // The eigensolver returns unit l2 columns, which makes psi unit in the
    // discrete L2(-1,1) inner product.
    std::vector<double> psi(quad_order);
    for (std::size_t i = 0; i < quad_order; ++i) {
      psi[i] = r.eigenvectors(static_cast<Eigen::Index>(i), col) / std::sqrt(r.rule.weights[i]);
    }
    // Sign convention: positive at the first node where |psi| is resolved.
    for (std::size_t i = 0; i < quad_order; ++i) {
      if (std::abs(psi[i]) > 1e-12) {
        if (psi[i] < 0.0) {
          for (double& v : psi) v = -v;
        }
        break;
      }
    }
    s.eigenvectors[mode] = std::move(psi);
  }

  // Extension constants alpha_n: ratio of the band-limited Fourier integral
  // to psi_n(t/c) at t = 0 for even modes, via the t-derivative at 0 for odd
  // modes. The integrals reduce to quadrature sums over the nodes.
  for (std::size_t mode = 0; mode <= n_max; ++mode) {
    const std::vector<double>& psi = s.eigenvectors[mode];
    if (mode % 2 == 0) {
      double integral = 0.0;  // (1/2pi) int psi dw
      for (std::size_t i = 0; i < quad_order; ++i) {
        integral += s.quad_weights[i] * psi[i];
      }
      integral /= 2.0 * M_PI;
      const double psi0 = eval_pswf(s, mode, 0.0);
      s.extension_constants[mode] = integral / psi0;
    } else {
      double integral = 0.0;  // (1/2pi) int w psi dw  (the d/dt at 0 factor)
      for (std::size_t i = 0; i < quad_order; ++i) {
        integral += s.quad_weights[i] * s.quad_nodes[i] * psi[i];
      }
      integral /= 2.0 * M_PI;
      // d/dx psi at 0 through the Nystrom formula.
      double dpsi = 0.0;
      for (std::size_t i = 0; i < quad_order; ++i) {
        dpsi += s.quad_weights[i] * sinc_kernel_deriv(c.c(), -s.quad_nodes[i]) * psi[i];
      }
      dpsi /= s.eigenvalues[mode];
      s.extension_constants[mode] = integral * c.c() / dpsi;
    }
  }
  return s;
}

double lambda0_asymptotic(const TimeBandwidthProduct& c) {
  const double cc = c.c();
  const double v = 1.0 - 4.0 * std::sqrt(M_PI * cc) * std::exp(-2.0 * cc);
  const double tiny = 1e-15;  // the formula goes negative for small c
  const double below_one = 1.0 - std::numeric_limits<double>::epsilon();
  if (v < tiny) return tiny;
  if (v > below_one) return below_one;
  return v;
}

double eval_pswf(const ProlateSpectrum& s, std::size_t n, double x) {
  if (n >= s.eigenvalues.size()) throw InputError("eval_pswf: mode index out of range");
  if (!(x >= -1.0 && x <= 1.0)) throw InputError("eval_pswf: abscissa must lie in [-1, 1]");
  return eval_pswf_extended(s, n, x);
}

double eval_pswf_extended(const ProlateSpectrum& s, std::size_t n, double x) {
  if (n >= s.eigenvalues.size()) throw InputError("eval_pswf_extended: mode index out of range");
  const double cc = s.c.c();
  const std::vector<double>& psi = s.eigenvectors[n];
  double sum = 0.0;
  for (std::size_t i = 0; i < s.quad_nodes.size(); ++i) {
    sum += s.quad_weights[i] * sinc_kernel(cc, x - s.quad_nodes[i]) * psi[i];
  }
  return sum / s.eigenvalues[n];
}

double extend_pswf_fourier(const ProlateSpectrum& s, std::size_t n, double t) {
  if (n >= s.eigenvalues.size()) throw InputError("extend_pswf_fourier: mode index out of range");
  const std::vector<double>& psi = s.eigenvectors[n];
  double sum = 0.0;
  if (n % 2 == 0) {
    for (std::size_t i = 0; i < s.quad_nodes.size(); ++i) {
      sum += s.quad_weights[i] * psi[i] * std::cos(s.quad_nodes[i] * t);
    }
  } else {
    for (std::size_t i = 0; i < s.quad_nodes.size(); ++i) {
      sum += s.quad_weights[i] * psi[i] * std::sin(s.quad_nodes[i] * t);
    }
  }
  return sum / (2.0 * M_PI);
}

double extend_pswf_time(const ProlateSpectrum& s, std::size_t n, double t) {
  if (n >= s.eigenvalues.size()) throw InputError("extend_pswf_time: mode index out of range");
  const double tau = t / s.c.c();
  if (std::abs(tau) <= 1.0) {
    return s.extension_constants[n] * eval_pswf(s, n, tau);
  }
  // The kernel continuation keeps its accuracy arbitrarily far out, where a
  // direct quadrature of the Fourier integral would alias.
  return s.extension_constants[n] * eval_pswf_extended(s, n, tau);
}

}  // namespace tfspec
