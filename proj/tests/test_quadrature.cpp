#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qtomo/errors.hpp"
#include "qtomo/quadrature.hpp"

using namespace qtomo;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("gauss_legendre: weights sum to 2 and degree 2n-1 polynomials are exact") {
  for (unsigned order : {2u, 5u, 16u, 32u}) {
    const auto rule = gauss_legendre(order);
    double wsum = 0.0;
    for (double w : rule.weights) wsum += w;
    CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
    for (unsigned p = 0; p < 2 * order; ++p) {
      double s = 0.0;
      for (unsigned k = 0; k < order; ++k) s += rule.weights[k] * std::pow(rule.nodes[k], p);
      const double exact = (p % 2 == 1) ? 0.0 : 2.0 / (p + 1.0);
      CHECK(std::abs(s - exact) <= 1e-13);
    }
  }
}

TEST_CASE("integrate_real: examples") {
  CHECK(integrate_real([](double t) { return std::pow(std::sin(0.5 * t), 2); }, 0.0, 2.0 * kPi, 1e-12) ==
        doctest::Approx(kPi).epsilon(1e-12));
  CHECK(integrate_real([](double) { return 1.0; }, 0.0, 1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-14));
  const double g = integrate_real([](double t) { return t * std::exp(-t * t / 4.0); }, 0.0, 20.0, 1e-12);
  CHECK(std::abs(g - 2.0) <= 1e-10);
}

TEST_CASE("integrate_real: refinement cap raises an error carrying the last two estimates") {
  auto step = [](double x) { return x < 0.3 ? 1.0 : 0.0; };
  try {
    integrate_real(step, 0.0, 1.0, 1e-16);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.code() == ErrorCode::QuadratureFailure);
    CHECK(e.previous_estimate() == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(e.last_estimate() == doctest::Approx(0.3).epsilon(1e-3));
    CHECK(e.previous_estimate() != e.last_estimate());
  }
}

TEST_CASE("integrate_oscillatory: examples") {
  const cplx a = integrate_oscillatory([](double) { return cplx(1.0); }, 0.0, 1.0, 1e-12);
  CHECK(std::abs(a - cplx(1.0)) <= 1e-13);
  const cplx b = integrate_oscillatory([](double) { return cplx(1.0); }, 1.0, 2.0 * kPi, 1e-12);
  CHECK(std::abs(b) <= 1e-12);
  const cplx c = integrate_oscillatory([](double t) { return cplx(t * std::exp(-t * t / 4.0)); }, 0.0, 20.0, 1e-12);
  CHECK(std::abs(c - cplx(2.0)) <= 1e-10);
}

TEST_CASE("integrate_oscillatory: high frequency against the antiderivative") {
  // int_0^T e^{i w t} dt = (e^{i w T} - 1) / (i w)
  for (double w : {7.0, -13.5, 40.0}) {
    const double cutoff = 5.0;
    const cplx got = integrate_oscillatory([](double) { return cplx(1.0); }, w, cutoff, 1e-12);
    const cplx want = (std::exp(cplx(0.0, w * cutoff)) - 1.0) / cplx(0.0, w);
    CHECK(std::abs(got - want) <= 1e-11);
  }
}

TEST_CASE("integrate_complex: both components converge") {
  const cplx v = integrate_complex([](double t) { return std::exp(cplx(0.0, t)); }, 0.0, kPi / 2.0, 1e-13);
  CHECK(std::abs(v - cplx(1.0, 1.0)) <= 1e-12);
}
