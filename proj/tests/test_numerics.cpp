#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tfspec/errors.hpp"
#include "tfspec/numerics.hpp"

using namespace tfspec;

TEST_CASE("gauss_legendre basic identities") {
  for (std::size_t n : {8u, 33u, 128u}) {
    const QuadratureRule r = gauss_legendre(n);
    double wsum = 0.0, x2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      wsum += r.weights[i];
      x2 += r.weights[i] * r.nodes[i] * r.nodes[i];
      CHECK(r.weights[i] > 0.0);
      if (i) CHECK(r.nodes[i] > r.nodes[i - 1]);
    }
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
    // symmetry of the rule
    CHECK(r.nodes.front() == doctest::Approx(-r.nodes.back()).epsilon(1e-14));
  }
}

TEST_CASE("gauss_legendre integrates high-degree polynomials exactly") {
  const QuadratureRule r = gauss_legendre(10);  // exact through degree 19
  double v = 0.0;
  for (std::size_t i = 0; i < 10; ++i) v += r.weights[i] * std::pow(r.nodes[i], 18);
  CHECK(v == doctest::Approx(2.0 / 19.0).epsilon(1e-12));
  CHECK_THROWS_AS(gauss_legendre(1), InputError);
}

TEST_CASE("erf_inv round trip and classic values") {
  for (double y : {-0.999, -0.9, -0.3, 1e-8, 0.1, 0.5, 0.9, 0.97, 0.9999}) {
    CHECK(std::erf(erf_inv(y)) == doctest::Approx(y).epsilon(1e-13));
  }
  CHECK(erf_inv(0.9) - erf_inv(0.1) == doctest::Approx(1.0742).epsilon(2e-4));
  CHECK(erf_inv(0.97) == doctest::Approx(1.5341).epsilon(2e-4));
  CHECK_THROWS_AS(erf_inv(1.0), InputError);
  CHECK_THROWS_AS(erf_inv(-1.5), InputError);
}

TEST_CASE("integrate_adaptive on smooth integrands") {
  const double g = integrate_adaptive([](double x) { return std::exp(-x * x); }, -8.0, 8.0,
                                      1e-12);
  CHECK(g == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-11));
  const double p = integrate_adaptive([](double x) { return x * x; }, 0.0, 1.0, 1e-14);
  CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("find_root brackets") {
  const double r = find_root([](double x) { return x * x - 2.0; }, 0.0, 2.0);
  CHECK(r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(find_root([](double x) { return x * x + 1.0; }, 0.0, 1.0, 1e-12),
                  InputError);
}

TEST_CASE("trapezoid_window matches trapezoid on the full grid") {
  std::vector<double> v(101);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = 0.1 * static_cast<double>(i);
    v[i] = std::sin(t) + 2.0;
  }
  const double whole = trapezoid(v, 0.1);
  CHECK(trapezoid_window(v, 0.0, 0.1, 0.0, 10.0) == doctest::Approx(whole).epsilon(1e-14));
  CHECK(trapezoid_window(v, 0.0, 0.1, -5.0, 20.0) == doctest::Approx(whole).epsilon(1e-14));
  CHECK(trapezoid_window(v, 0.0, 0.1, 3.0, 3.0) == 0.0);
  // additivity across a fractional split point
  const double left = trapezoid_window(v, 0.0, 0.1, 0.0, 4.321);
  const double right = trapezoid_window(v, 0.0, 0.1, 4.321, 10.0);
  CHECK(left + right == doctest::Approx(whole).epsilon(1e-13));
}

TEST_CASE("round_sig") {
  CHECK(round_sig(1.23456789012345e-7, 12) == doctest::Approx(1.23456789012e-7).epsilon(1e-12));
  CHECK(round_sig(0.0, 12) == 0.0);
}
