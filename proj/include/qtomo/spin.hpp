#pragma once

#include <cstdint>
#include <vector>

#include "qtomo/numerics.hpp"

namespace qtomo {

/// Spin operators in the J_z eigenbasis ordered m = -j, ..., +j.
struct SpinMatrices {
  int two_j;
  ComplexMatrix jx, jy, jz;
};

SpinMatrices spin_matrices(int two_j);

/// J_n = n_x J_x + n_y J_y + n_z J_z. The axis must be a unit vector.
ComplexMatrix axis_operator(const SpinMatrices& spin, const Vec3& axis);
ComplexMatrix axis_operator(int two_j, const Vec3& axis);

/// Eigendecomposition of J_n with column k belonging to m = k - j.
HermitianEigen axis_eigenbasis(const SpinMatrices& spin, const Vec3& axis);

class SpinDensityMatrix {
 public:
  SpinDensityMatrix(int two_j, ComplexMatrix rho);

  static SpinDensityMatrix pure(int two_j, std::span<const cplx> state);
  static SpinDensityMatrix maximally_mixed(int two_j);

  int two_j() const noexcept { return two_j_; }
  std::size_t dim() const noexcept { return rho_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return rho_; }

 private:
  int two_j_;
  ComplexMatrix rho_;
};

struct SpinRecord {
  Vec3 axis;
  int two_m;

  bool operator==(const SpinRecord&) const = default;
};

/// Throws unless the axis is unit within 1e-12 and two_m is a valid label.
void check_spin_record(const SpinRecord& record, int two_j);

/// Outcome probabilities along the axis, index k <-> m = k - j.
std::vector<double> spin_probabilities(const SpinDensityMatrix& rho, const Vec3& axis);

SpinRecord sample_spin_record(const SpinDensityMatrix& rho, const SpinMatrices& spin,
                              std::uint64_t seed, std::uint64_t index);
std::vector<SpinRecord> sample_spin(const SpinDensityMatrix& rho, std::size_t count,
                                    std::uint64_t seed, unsigned workers = 1);

/// Estimator by numerical quadrature of the radial integral.
double kernel_spin_numeric(const ComplexMatrix& a, const Vec3& axis, int two_lambda,
                           double tol = 1e-12);
cplx kernel_spin_numeric_complex(const ComplexMatrix& a, const Vec3& axis, int two_lambda,
                                 double tol = 1e-12);

/// Closed form (2j+1) [a_l - (a_{l+1} + a_{l-1}) / 2], a_m = <m_n|A|m_n>.
double kernel_spin_closed(const ComplexMatrix& a, const Vec3& axis, int two_lambda);
cplx kernel_spin_closed_complex(const ComplexMatrix& a, const Vec3& axis, int two_lambda);

/// Closed-form kernel for every outcome at once, index k <-> lambda = k - j.
std::vector<cplx> kernel_spin_all(const ComplexMatrix& a, const SpinMatrices& spin,
                                  const Vec3& axis);

/// Deterministic average of the estimator over axes (Gauss-Legendre in
/// cos(theta) times trapezoid in azimuth) and outcomes.
double exact_reconstruction(const SpinDensityMatrix& rho, const ComplexMatrix& a,
                            unsigned sphere_order = 16);

}  // namespace qtomo
