#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "qtomo/errors.hpp"
#include "qtomo/numerics.hpp"
#include "qtomo/quadrature.hpp"
#include "qtomo/random_ops.hpp"

using namespace qtomo;

namespace {

constexpr double kPi = std::numbers::pi;

const ComplexMatrix kSigma1{{0.0, 1.0}, {1.0, 0.0}};
const ComplexMatrix kSigma3{{1.0, 0.0}, {0.0, -1.0}};

ComplexMatrix rebuild(const HermitianEigen& e) {
  const std::size_t n = e.values.size();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out(i, j) += e.vectors(i, k) * e.values[k] * std::conj(e.vectors(j, k));
  return out;
}

double binomial(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

// L^l_n(x) = sum_k (-1)^k C(n+l, n-k) x^k / k!
double laguerre_series(int n, int l, double x) {
  double s = 0.0;
  for (int k = 0; k <= n; ++k) s += std::pow(-1.0, k) * binomial(n + l, n - k) * std::pow(x, k) / std::tgamma(k + 1.0);
  return s;
}

// psi_n from the explicit physicists' Hermite sum.
double hermite_function(int n, double x) {
  double h = 0.0;
  for (int m = 0; m <= n / 2; ++m) {
    h += std::pow(-1.0, m) * std::pow(2.0 * x, n - 2 * m) / (std::tgamma(m + 1.0) * std::tgamma(n - 2 * m + 1.0));
  }
  h *= std::tgamma(n + 1.0);
  return h * std::exp(-0.5 * x * x) / std::sqrt(std::pow(2.0, n) * std::tgamma(n + 1.0) * std::sqrt(kPi));
}

}  // namespace

TEST_CASE("hermitian_eigen: diagonal input sorts values and permutes basis vectors") {
  const std::vector<double> d{3.0, 1.0, 2.0};
  const auto e = hermitian_eigen(ComplexMatrix::diagonal(d));
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(2.0));
  CHECK(e.values[2] == doctest::Approx(3.0));
  CHECK(std::abs(e.vectors(1, 0)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(2, 1)) == doctest::Approx(1.0));
  CHECK(std::abs(e.vectors(0, 2)) == doctest::Approx(1.0));
}

TEST_CASE("hermitian_eigen: sigma_1 has spectrum -1, +1") {
  const auto e = hermitian_eigen(kSigma1);
  CHECK(e.values[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(e.values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigen: round trip and orthonormality for random matrices of dims 2..16") {
  std::mt19937_64 rng(42);
  for (std::size_t dim = 2; dim <= 16; ++dim) {
    const auto m = random_hermitian(dim, rng);
    const auto e = hermitian_eigen(m);
    CHECK(max_abs_diff(rebuild(e), m) <= 1e-10 * m.max_abs());
    const auto gram = e.vectors.adjoint() * e.vectors;
    CHECK(max_abs_diff(gram, ComplexMatrix::identity(dim)) <= 1e-12);
    for (std::size_t k = 1; k < dim; ++k) CHECK(e.values[k - 1] <= e.values[k]);
  }
}

TEST_CASE("hermitian_eigen: 6x6 example reconstructs to 1e-10") {
  std::mt19937_64 rng(6);
  const auto m = random_hermitian(6, rng);
  CHECK(max_abs_diff(rebuild(hermitian_eigen(m)), m) <= 1e-10);
}

TEST_CASE("hermitian_eigen: rejects non-Hermitian input and reports the asymmetry") {
  const ComplexMatrix m{{1.0, 2.0}, {0.0, 1.0}};
  try {
    hermitian_eigen(m);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHermitian);
    CHECK(std::string(e.what()).find("asymmetry") != std::string::npos);
  }
}

TEST_CASE("hermitian_eigen: rejects dimensions above the cap") {
  CHECK_THROWS_AS(hermitian_eigen(ComplexMatrix::identity(kMaxEigenDim + 1)), Error);
}

TEST_CASE("unitary_evolution: examples") {
  std::mt19937_64 rng(3);
  const auto h = random_hermitian(4, rng);
  CHECK(max_abs_diff(unitary_evolution(h, 0.0), ComplexMatrix::identity(4)) <= 1e-12);

  const auto u = unitary_evolution(kSigma3 * cplx(0.5), 2.0 * kPi);
  CHECK(max_abs_diff(u, ComplexMatrix::identity(2) * cplx(-1.0)) <= 1e-12);

  for (double t : {0.3, 1.7, -2.4}) {
    const auto expected = ComplexMatrix::identity(2) * cplx(std::cos(t)) + kSigma1 * cplx(0.0, std::sin(t));
    CHECK(max_abs_diff(unitary_evolution(kSigma1, t), expected) <= 1e-12);
  }
}

TEST_CASE("unitary_evolution: unitarity and group law") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = random_hermitian(2 + trial % 4, rng);
    const double s = 0.37 * trial - 1.0, t = 0.81 - 0.2 * trial;
    const auto us = unitary_evolution(h, s), ut = unitary_evolution(h, t);
    CHECK(max_abs_diff(us * ut, unitary_evolution(h, s + t)) <= 1e-9);
    CHECK(max_abs_diff(us.adjoint() * us, ComplexMatrix::identity(h.dim())) <= 1e-10);
  }
}

TEST_CASE("laguerre: examples") {
  for (unsigned l : {0u, 1u, 5u})
    for (double x : {-1.0, 0.0, 3.5}) CHECK(laguerre(0, l, x) == 1.0);
  CHECK(laguerre(1, 0, 2.0) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(laguerre(2, 1, 1.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("laguerre: explicit series oracle for n <= 8 and the three-term recurrence") {
  for (int n = 0; n <= 8; ++n) {
    for (int l = 0; l <= 6; ++l) {
      for (double x : {0.0, 0.25, 1.0, 3.0, 7.5, 15.0}) {
        const double want = laguerre_series(n, l, x);
        CHECK(std::abs(laguerre(n, l, x) - want) <= 1e-10 * std::max(1.0, std::abs(want)));
      }
    }
  }
  for (unsigned n = 1; n < 30; ++n) {
    for (unsigned l : {0u, 2u, 7u}) {
      const double x = 2.3;
      const double lhs = (n + 1.0) * laguerre(n + 1, l, x);
      const double rhs = (2.0 * n + l + 1.0 - x) * laguerre(n, l, x) - (n + l) * laguerre(n - 1, l, x);
      CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST_CASE("oscillator_eigenfunction: examples") {
  CHECK(oscillator_eigenfunction(0, 0.0) == doctest::Approx(0.7511255444649425).epsilon(1e-15));
  CHECK(oscillator_eigenfunction(1, 0.0) == 0.0);
  const double norm = integrate_real([](double x) { return std::pow(oscillator_eigenfunction(3, x), 2); }, -12.0, 12.0, 1e-12);
  CHECK(std::abs(norm - 1.0) <= 1e-8);
}

TEST_CASE("oscillator_eigenfunction: matches the explicit Hermite sum and the batch evaluator") {
  std::vector<double> batch(11);
  for (double x : {-3.1, -0.4, 0.0, 1.2, 2.9}) {
    oscillator_eigenfunctions(x, batch);
    for (int n = 0; n <= 10; ++n) {
      CHECK(oscillator_eigenfunction(n, x) == doctest::Approx(hermite_function(n, x)).epsilon(1e-11));
      CHECK(batch[n] == oscillator_eigenfunction(n, x));
    }
  }
}

TEST_CASE("oscillator_eigenfunction: orthonormal for n, m <= 12") {
  for (unsigned n = 0; n <= 12; ++n) {
    for (unsigned m = n; m <= 12; ++m) {
      const double v = integrate_real(
          [&](double x) { return oscillator_eigenfunction(n, x) * oscillator_eigenfunction(m, x); }, -14.0, 14.0, 1e-11);
      CHECK(std::abs(v - (n == m ? 1.0 : 0.0)) <= 1e-7);
    }
  }
}

TEST_CASE("oscillator_eigenfunction: stays finite at high order") {
  const double v = oscillator_eigenfunction(200, 5.0);
  CHECK(std::isfinite(v));
  CHECK(std::abs(v) < 1.0);
}
