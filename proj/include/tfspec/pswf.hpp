#pragma once

#include <cstddef>
#include <optional>
#include <vector>

namespace tfspec {

/**
 * Dimensionless time-bandwidth product c = W*T/2 for a band (-W, W) in rad/s
 * and a time slot of length T seconds. The single parameter governing the
 * sinc-kernel concentration eigenproblem.
 */
class TimeBandwidthProduct {
 public:
  static TimeBandwidthProduct from_c(double c);
  static TimeBandwidthProduct from_band_and_slot(double band_edge, double slot_length);

  double c() const { return c_; }
  std::optional<double> band_edge() const { return band_edge_; }
  std::optional<double> slot_length() const { return slot_length_; }

 private:
  TimeBandwidthProduct() = default;
  double c_ = 0.0;
  std::optional<double> band_edge_;
  std::optional<double> slot_length_;
};

/// Dense symmetric matrix of the symmetrized Nystrom discretization.
struct KernelMatrix {
  std::size_t n = 0;
  std::vector<double> data;  // row-major, n x n

  double at(std::size_t i, std::size_t j) const { return data[i * n + j]; }
  double& at(std::size_t i, std::size_t j) { return data[i * n + j]; }
  double trace() const;
};

/**
 * Entry (i,j) = sqrt(w_i) * K(x_i, x_j) * sqrt(w_j), where x, w are the
 * Gauss-Legendre nodes and weights of the given order on [-1, 1] and
 * K(x, y) = sin(c (x - y)) / (pi (x - y)), with K(x, x) = c / pi.
 * The similarity by sqrt(w) keeps the matrix symmetric so a standard
 * symmetric eigensolver applies; its spectrum equals that of the
 * Nystrom-discretized operator.
 */
KernelMatrix build_kernel(const TimeBandwidthProduct& c, std::size_t quad_order);

/**
 * Eigenvalues and eigenfunctions of the concentration eigenproblem at a
 * given c. Eigenvalues are the extremal energy fractions a band-limited
 * signal can concentrate in the time slot; eigenvectors hold the prolate
 * spheroidal wave functions sampled at the quadrature nodes with unit
 * discrete L2(-1,1) norm. Immutable after construction and safe to share
 * across concurrent readers.
 */
struct ProlateSpectrum {
  TimeBandwidthProduct c = TimeBandwidthProduct::from_c(1.0);
  std::vector<double> eigenvalues;                // strictly decreasing, in (0,1)
  std::vector<double> quad_nodes;
  std::vector<double> quad_weights;
  std::vector<std::vector<double>> eigenvectors;  // [mode][node]
  std::vector<double> extension_constants;        // alpha_n per mode

  std::size_t n_max() const { return eigenvalues.size() - 1; }
};

/**
 * Solve the discretized eigenproblem and keep the n_max+1 largest modes.
 *
 * Throws InputError when n_max + 1 > quad_order / 2 (under-resolved),
 * ConvergenceError when the eigensolver fails, and ResolutionError when
 * the smallest requested eigenvalue is below 10 * machine epsilon.
 */
ProlateSpectrum compute_spectrum(const TimeBandwidthProduct& c, std::size_t n_max = 9,
                                 std::size_t quad_order = 128);

/// Largest `count` eigenvalues of the discretized kernel, no resolution guard.
std::vector<double> leading_eigenvalues(const TimeBandwidthProduct& c,
                                        std::size_t quad_order, std::size_t count);

/// Large-c approximation lambda0 ~ 1 - 4 sqrt(pi c) e^{-2c}, clamped to (0,1).
double lambda0_asymptotic(const TimeBandwidthProduct& c);

/// Nystrom interpolation of mode n at x in [-1, 1].
double eval_pswf(const ProlateSpectrum& s, std::size_t n, double x);

/**
 * Analytic continuation of mode n to any real x through the sinc-kernel
 * Nystrom sum (1/lambda_n) sum_j w_j K(x, x_j) psi_n(x_j). The kernel is
 * itself band-limited, so this equals the band-limited extension of psi_n;
 * unlike a direct quadrature of the Fourier integral it stays accurate for
 * arguments far outside the slot.
 */
double eval_pswf_extended(const ProlateSpectrum& s, std::size_t n, double x);

/**
 * Band-limited extension of mode n to the whole time axis. The time variable
 * uses slot units: the concentration slot is |t| <= c, so psi_n(t/c) is the
 * in-slot value. Inside the slot this returns alpha_n * eval_pswf(s, n, t/c);
 * outside it evaluates the band-limited Fourier integral by quadrature.
 */
double extend_pswf_time(const ProlateSpectrum& s, std::size_t n, double t);

/// The Fourier-integral evaluation path of the extension, valid for any t.
double extend_pswf_fourier(const ProlateSpectrum& s, std::size_t n, double t);

}  // namespace tfspec
