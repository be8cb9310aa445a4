#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "tfspec/concentration.hpp"
#include "tfspec/errors.hpp"
#include "tfspec/gaussian.hpp"
#include "tfspec/numerics.hpp"

using namespace tfspec;

TEST_CASE("impulse closed form and normalization") {
  const GaussianDesign d{1.0};
  CHECK(impulse(d, 0.0) == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(impulse(d, 50.0) == 0.0);
  const double integral =
      oracle::brute_integral([&](double t) { return impulse(d, t); }, 0.0, 12.0);
  CHECK(integral == doctest::Approx(1.0).epsilon(1e-8));
  CHECK_THROWS_AS(GaussianDesign::create(0.0), InputError);
}

TEST_CASE("step response") {
  const GaussianDesign d{1.0};
  CHECK(step(d, 0.0) == 0.0);
  CHECK_THROWS_AS(step(d, -0.1), InputError);
  // erf-inverse oracle: u hits 0.9 where the inverse says it should
  const double t90 = oracle::invert_monotone([&](double t) { return step(d, t); }, 0.9,
                                             0.0, 4.0);
  CHECK(t90 == doctest::Approx(1.1631).epsilon(1e-4));
  // monotone and tending to one
  double prev = -1.0;
  for (double t = 0.0; t < 6.0; t += 0.01) {
    const double u = step(d, t);
    CHECK(u >= prev);
    prev = u;
  }
  CHECK(step(d, 8.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("rise and settling constants") {
  CHECK(rise_time(GaussianDesign{1.0}) == doctest::Approx(1.0742).epsilon(1e-3));
  CHECK(settling_time(GaussianDesign{1.0}) == doctest::Approx(1.5341).epsilon(1e-3));
  CHECK(rise_time(GaussianDesign{100.0}) == doctest::Approx(0.10742).epsilon(1e-3));
  // the settling definition closes the 3% band from below, monotonically
  const GaussianDesign d{2.5};
  const double ts = settling_time(d);
  CHECK(step(d, ts) == doctest::Approx(0.97).epsilon(1e-10));
}

TEST_CASE("bandwidth products are a-independent constants") {
  for (double a : {0.01, 0.25, 1.0, 25.0, 400.0}) {
    const BandwidthProducts p = products(GaussianDesign{a});
    CHECK(p.rise_product > 1.51);
    CHECK(p.rise_product < 1.53);
    CHECK(p.settle_product > 2.16);
    CHECK(p.settle_product < 2.18);
  }
  const BandwidthProducts lo = products(GaussianDesign{0.25});
  const BandwidthProducts hi = products(GaussianDesign{25.0});
  CHECK(lo.rise_product == doctest::Approx(hi.rise_product).epsilon(1e-10));
  CHECK(lo.settle_product == doctest::Approx(hi.settle_product).epsilon(1e-10));
}

TEST_CASE("design solvers round-trip") {
  CHECK(design_from_rise_time(rise_time(GaussianDesign{1.0})).a ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(design_from_settling_time(settling_time(GaussianDesign{7.3})).a ==
        doctest::Approx(7.3).epsilon(1e-10));
  CHECK(design_from_freq_std(std::sqrt(2.0)).a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(design_from_settling_time(0.15341).a == doctest::Approx(100.0).epsilon(1e-3));
  CHECK_THROWS_AS(design_from_rise_time(0.0), InputError);
  CHECK_THROWS_AS(design_from_freq_std(-2.0), InputError);
}

TEST_CASE("sampled impulse matches the closed-form transform") {
  for (double a : {0.25, 1.0, 25.0}) {
    const SampledSignal h = sample_impulse(GaussianDesign{a}, 8193, 12.0);
    const double wmax = 6.0 * std::sqrt(a);
    const SampledSpectrum s = transform(h, wmax, 2049);
    for (std::size_t i = 0; i < s.size(); i += 128) {
      const double w = s.omega(i);
      CHECK(s.values[i].real() ==
            doctest::Approx(2.0 * std::exp(-w * w / (4.0 * a))).epsilon(1e-6));
    }
  }
}

TEST_CASE("uncertainty equality across the design family") {
  for (double a : {0.01, 0.25, 1.0, 25.0, 400.0}) {
    const SampledSignal h = sample_impulse(GaussianDesign{a}, 8193, 12.0);
    const SampledSpectrum s = transform(h, 7.0 * std::sqrt(a), 4097);
    const VarianceStats v = variance_stats(h, s);
    CHECK(heisenberg_product(v) == doctest::Approx(0.25).epsilon(1e-3));
  }
}
