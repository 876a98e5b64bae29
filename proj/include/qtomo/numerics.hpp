#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qtomo {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;

/// Dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * dim_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return data_[i * dim_ + j];
  }

  std::span<const cplx> data() const noexcept { return data_; }
  std::span<cplx> data() noexcept { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double max_abs() const;
  /// max_{i,j} |M(i,j) - conj(M(j,i))|
  double max_asymmetry() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> v);

 private:
  std::size_t dim_ = 0;
  std::vector<cplx> data_;
};

/// Tr[a b] without forming the product.
cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b);
/// <u, M v>, antilinear in u.
cplx sandwich(std::span<const cplx> u, const ComplexMatrix& m, std::span<const cplx> v);
cplx inner(std::span<const cplx> u, std::span<const cplx> v);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors

  std::vector<cplx> column(std::size_t k) const;
};

inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr std::size_t kMaxEigenDim = 512;

/// Cyclic complex Jacobi. Rejects input whose asymmetry exceeds
/// kHermitianTolerance * max(1, |M|_max).
HermitianEigen hermitian_eigen(const ComplexMatrix& m);

/// exp(i t H) for Hermitian H.
ComplexMatrix unitary_evolution(const ComplexMatrix& h, double t);
ComplexMatrix unitary_evolution(const HermitianEigen& eig, double t);

/// Associated Laguerre polynomial L^l_n(x) by upward recurrence in n.
double laguerre(unsigned n, unsigned l, double x);

/// Normalized Hermite function psi_n(x).
double oscillator_eigenfunction(unsigned n, double x);
/// Fills out[k] = psi_k(x) for k < out.size().
void oscillator_eigenfunctions(double x, std::span<double> out);

}  // namespace qtomo
