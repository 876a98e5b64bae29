#include "qtomo/validation.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "qtomo/errors.hpp"
#include "qtomo/group.hpp"
#include "qtomo/homodyne.hpp"
#include "qtomo/io.hpp"
#include "qtomo/quadrature.hpp"
#include "qtomo/random_ops.hpp"
#include "qtomo/spin.hpp"

namespace qtomo {

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

template <typename Fn>
CheckResult guarded(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const std::exception& e) {
    return {name, false, std::string("error: ") + e.what()};
  }
}

CheckResult haar_volume() {
  return guarded("haar_volume", [] {
    const double volume = haar_integral_su2([](const ComplexMatrix&) { return cplx(1.0); }, 1e-10).real();
    const double expected = 16.0 * kPi * kPi;
    const double rel = std::abs(volume - expected) / expected;
    return CheckResult{"haar_volume", rel <= 1e-6,
                       format_double(volume) + " vs 16pi^2 = " + format_double(expected) + " (rel " + sci(rel) +
                           ", tol 1e-06)"};
  });
}

CheckResult orthogonality(int two_j, int trials) {
  const std::string name = "orthogonality_j" + std::to_string(two_j) + "/2";
  return guarded(name, [&] {
    std::mt19937_64 rng(1000 + two_j);
    const std::size_t dim = static_cast<std::size_t>(two_j) + 1;
    double worst = 0.0;
    for (int i = 0; i < trials; ++i) {
      const auto u1 = random_unit_vector(dim, rng), u2 = random_unit_vector(dim, rng);
      const auto v1 = random_unit_vector(dim, rng), v2 = random_unit_vector(dim, rng);
      const auto check = orthogonality_residual(two_j, u1, u2, v1, v2);
      worst = std::max(worst, check.residual / (1.0 + std::abs(check.rhs)));
    }
    return CheckResult{name, worst <= 1e-6,
                       "max residual / (1 + |rhs|) = " + sci(worst) + " over " + std::to_string(trials) +
                           " quadruples, d = " + std::to_string(two_j + 1) + "/(16pi^2) (tol 1e-06)"};
  });
}

CheckResult spin_kernel_equivalence() {
  return guarded("spin_kernel_closed_vs_numeric", [] {
    std::mt19937_64 rng(77);
    double worst = 0.0;
    int evaluations = 0;
    for (int two_j = 1; two_j <= 3; ++two_j) {
      for (int trial = 0; trial < 4; ++trial) {
        const auto a = random_hermitian(static_cast<std::size_t>(two_j) + 1, rng);
        const Vec3 axis = random_axis(rng);
        for (int two_l = -two_j; two_l <= two_j; two_l += 2) {
          worst = std::max(worst, std::abs(kernel_spin_closed(a, axis, two_l) - kernel_spin_numeric(a, axis, two_l)));
          ++evaluations;
        }
      }
    }
    return CheckResult{"spin_kernel_closed_vs_numeric", worst <= 1e-9,
                       "max |closed - numeric| = " + sci(worst) + " over " + std::to_string(evaluations) +
                           " evaluations (tol 1e-09)"};
  });
}

CheckResult omega_normalization() {
  return guarded("omega_normalization", [] {
    std::mt19937_64 rng(5);
    const int n_max = 8;
    const FockDensityMatrix rho(n_max, random_fock_density(n_max + 1, rng, 0.05));
    const double y_max = homodyne_y_max(n_max);
    double worst = 0.0;
    for (int k = 0; k < 10; ++k) {
      const double phi = 2.0 * kPi * k / 10.0 + 0.1;
      const double mass = integrate_real([&](double y) { return quadrature_density(rho, phi, y); }, -y_max, y_max, 1e-10);
      worst = std::max(worst, std::abs(mass - 1.0));
    }
    return CheckResult{"omega_normalization", worst <= 1e-6,
                       "max |int omega dy - 1| = " + sci(worst) + " over 10 phases (tol 1e-06)"};
  });
}

CheckResult su2_jacobian() {
  return guarded("su2_jacobian_identity", [] {
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
      const double r = 1e-3 + (2.0 * kPi - 2e-3) * k / 99.0;
      const Vec3 v{r * 0.48, -r * 0.6, r * 0.64};
      const auto eig = su2_adjoint_eigenvalues(v);
      const double s = std::sin(0.5 * r);
      worst = std::max(worst, std::abs(jacobian_from_eigenvalues(eig) - 4.0 * s * s / (r * r)));
    }
    return CheckResult{"su2_jacobian_identity", worst <= 1e-12,
                       "max |prod (1-e^-z)/z - 4 sin^2(r/2)/r^2| = " + sci(worst) + " on 100 radii (tol 1e-12)"};
  });
}

CheckResult spin_exact_reconstruction() {
  return guarded("spin_exact_reconstruction", [] {
    std::mt19937_64 rng(11);
    double worst = 0.0;
    for (int two_j = 1; two_j <= 3; ++two_j) {
      const std::size_t dim = static_cast<std::size_t>(two_j) + 1;
      for (int trial = 0; trial < 10; ++trial) {
        const SpinDensityMatrix rho(two_j, random_density(dim, rng));
        const auto a = random_hermitian(dim, rng);
        worst = std::max(worst, std::abs(exact_reconstruction(rho, a) - trace_product(a, rho.matrix()).real()));
      }
    }
    return CheckResult{"spin_exact_reconstruction", worst <= 1e-8,
                       "max |reconstruction - Tr[A rho]| = " + sci(worst) + " over 30 pairs (tol 1e-08)"};
  });
}

}  // namespace

std::vector<CheckResult> run_validation() {
  return {haar_volume(),           orthogonality(1, 20),  orthogonality(2, 20), su2_jacobian(),
          spin_kernel_equivalence(), omega_normalization(), spin_exact_reconstruction()};
}

std::string format_report(const std::vector<CheckResult>& results) {
  std::string out;
  for (const auto& r : results) out += r.name + ": " + r.detail + (r.passed ? " PASS\n" : " FAIL\n");
  return out;
}

}  // namespace qtomo
