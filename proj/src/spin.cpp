#include "qtomo/spin.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qtomo/density.hpp"
#include "qtomo/errors.hpp"
#include "qtomo/group.hpp"
#include "qtomo/parallel.hpp"
#include "qtomo/quadrature.hpp"
#include "qtomo/rng.hpp"

namespace qtomo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAxisTolerance = 1e-12;
constexpr double kSpectrumTolerance = 1e-8;
constexpr double kImaginaryResidue = 1e-9;

void check_two_j(int two_j, const char* who) {
  if (two_j < 1) throw Error(ErrorCode::InvalidArgument, std::string(who) + ": two_j must be >= 1");
}

void check_axis(const Vec3& axis, const char* who) {
  const double norm = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
  if (!(std::abs(norm - 1.0) <= kAxisTolerance)) {
    std::ostringstream os;
    os << who << ": axis is not a unit vector (norm " << norm << ")";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

void check_lambda(int two_j, int two_lambda, const char* who) {
  if (std::abs(two_lambda) > two_j || (two_lambda + two_j) % 2 != 0) {
    std::ostringstream os;
    os << who << ": two_lambda " << two_lambda << " is not an eigenvalue label for two_j " << two_j;
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
}

int two_j_of(const ComplexMatrix& a, const char* who) {
  if (a.dim() < 2) throw Error(ErrorCode::InvalidArgument, std::string(who) + ": operator dimension must be >= 2");
  return static_cast<int>(a.dim()) - 1;
}

// a_m = <m_n|A|m_n> in the eigenbasis of J_n.
std::vector<cplx> diagonal_in_basis(const ComplexMatrix& a, const HermitianEigen& basis) {
  std::vector<cplx> diag(a.dim());
  for (std::size_t k = 0; k < diag.size(); ++k) {
    const auto col = basis.column(k);
    diag[k] = sandwich(col, a, col);
  }
  return diag;
}

std::vector<cplx> kernel_from_diagonal(std::span<const cplx> diag) {
  const std::size_t n = diag.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx above = k + 1 < n ? diag[k + 1] : cplx{};
    const cplx below = k > 0 ? diag[k - 1] : cplx{};
    out[k] = static_cast<double>(n) * (diag[k] - 0.5 * (above + below));
  }
  return out;
}

}  // namespace

SpinMatrices spin_matrices(int two_j) {
  check_two_j(two_j, "spin_matrices");
  const std::size_t dim = static_cast<std::size_t>(two_j) + 1;
  const double j = 0.5 * two_j;
  SpinMatrices s{two_j, ComplexMatrix(dim), ComplexMatrix(dim), ComplexMatrix(dim)};
  for (std::size_t k = 0; k < dim; ++k) {
    const double m = static_cast<double>(k) - j;
    s.jz(k, k) = m;
    if (k + 1 < dim) {
      // <m+1| J+ |m>
      const double up = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
      s.jx(k + 1, k) = 0.5 * up;
      s.jx(k, k + 1) = 0.5 * up;
      s.jy(k + 1, k) = cplx(0.0, -0.5 * up);
      s.jy(k, k + 1) = cplx(0.0, 0.5 * up);
    }
  }
  return s;
}

ComplexMatrix axis_operator(const SpinMatrices& spin, const Vec3& axis) {
  check_axis(axis, "axis_operator");
  return spin.jx * axis[0] + spin.jy * axis[1] + spin.jz * axis[2];
}

ComplexMatrix axis_operator(int two_j, const Vec3& axis) {
  return axis_operator(spin_matrices(two_j), axis);
}

HermitianEigen axis_eigenbasis(const SpinMatrices& spin, const Vec3& axis) {
  auto eig = hermitian_eigen(axis_operator(spin, axis));
  const double j = 0.5 * spin.two_j;
  for (std::size_t k = 0; k < eig.values.size(); ++k) {
    if (std::abs(eig.values[k] - (static_cast<double>(k) - j)) > kSpectrumTolerance) {
      std::ostringstream os;
      os << "axis_eigenbasis: spectrum of J_n is not {-j..j} (eigenvalue " << eig.values[k]
         << " at index " << k << ")";
      throw Error(ErrorCode::NoConvergence, os.str());
    }
  }
  return eig;
}

SpinDensityMatrix::SpinDensityMatrix(int two_j, ComplexMatrix rho) : two_j_(two_j), rho_(std::move(rho)) {
  check_two_j(two_j, "SpinDensityMatrix");
  if (rho_.dim() != static_cast<std::size_t>(two_j) + 1) {
    throw Error(ErrorCode::InvalidState, "SpinDensityMatrix: matrix dimension must be two_j + 1");
  }
  check_density_matrix(rho_, "SpinDensityMatrix");
}

SpinDensityMatrix SpinDensityMatrix::pure(int two_j, std::span<const cplx> state) {
  check_two_j(two_j, "SpinDensityMatrix::pure");
  if (state.size() != static_cast<std::size_t>(two_j) + 1) {
    throw Error(ErrorCode::InvalidState, "SpinDensityMatrix::pure: state dimension must be two_j + 1");
  }
  const double norm = std::sqrt(inner(state, state).real());
  if (!(norm > 0.0)) throw Error(ErrorCode::InvalidState, "SpinDensityMatrix::pure: zero vector");
  ComplexMatrix rho(state.size());
  for (std::size_t i = 0; i < state.size(); ++i)
    for (std::size_t k = 0; k < state.size(); ++k)
      rho(i, k) = state[i] * std::conj(state[k]) / (norm * norm);
  return SpinDensityMatrix(two_j, std::move(rho));
}

SpinDensityMatrix SpinDensityMatrix::maximally_mixed(int two_j) {
  check_two_j(two_j, "SpinDensityMatrix::maximally_mixed");
  return SpinDensityMatrix(two_j, ComplexMatrix::identity(two_j + 1) * cplx(1.0 / (two_j + 1)));
}

void check_spin_record(const SpinRecord& record, int two_j) {
  check_axis(record.axis, "SpinRecord");
  check_lambda(two_j, record.two_m, "SpinRecord");
}

namespace {

std::vector<double> probabilities_in_basis(const ComplexMatrix& rho, const HermitianEigen& basis) {
  std::vector<double> p(rho.dim());
  double total = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    const auto col = basis.column(k);
    p[k] = std::max(0.0, sandwich(col, rho, col).real());
    total += p[k];
  }
  if (std::abs(total - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "spin_probabilities: probabilities sum to " << total;
    throw Error(ErrorCode::NoConvergence, os.str());
  }
  return p;
}

}  // namespace

std::vector<double> spin_probabilities(const SpinDensityMatrix& rho, const Vec3& axis) {
  const auto spin = spin_matrices(rho.two_j());
  return probabilities_in_basis(rho.matrix(), axis_eigenbasis(spin, axis));
}

SpinRecord sample_spin_record(const SpinDensityMatrix& rho, const SpinMatrices& spin,
                              std::uint64_t seed, std::uint64_t index) {
  RecordStream stream(seed, index);
  const double cos_theta = 2.0 * stream.next_double() - 1.0;
  const double azimuth = 2.0 * kPi * stream.next_double();
  const double u = stream.next_double();
  const Vec3 axis = sphere_point(cos_theta, azimuth);
  const auto p = probabilities_in_basis(rho.matrix(), axis_eigenbasis(spin, axis));
  double total = 0.0;
  for (double x : p) total += x;
  double acc = 0.0;
  std::size_t k = 0;
  for (; k + 1 < p.size(); ++k) {
    acc += p[k];
    if (u * total < acc) break;
  }
  return SpinRecord{axis, 2 * static_cast<int>(k) - spin.two_j};
}

std::vector<SpinRecord> sample_spin(const SpinDensityMatrix& rho, std::size_t count,
                                    std::uint64_t seed, unsigned workers) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "sample_spin: count must be >= 1");
  const auto spin = spin_matrices(rho.two_j());
  std::vector<SpinRecord> out(count);
  for_each_shard(count, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sample_spin_record(rho, spin, seed, i);
  });
  return out;
}

cplx kernel_spin_numeric_complex(const ComplexMatrix& a, const Vec3& axis, int two_lambda,
                                 double tol) {
  const int two_j = two_j_of(a, "kernel_spin_numeric");
  check_lambda(two_j, two_lambda, "kernel_spin_numeric");
  const auto eig = hermitian_eigen(axis_operator(two_j, axis));
  auto g = [&](double t) {
    const double s = std::sin(0.5 * t);
    return trace_product(a, unitary_evolution(eig, -t)) * (s * s);
  };
  const cplx integral = integrate_oscillatory(g, 0.5 * two_lambda, 2.0 * kPi, tol);
  return (two_j + 1.0) / kPi * integral;
}

double kernel_spin_numeric(const ComplexMatrix& a, const Vec3& axis, int two_lambda, double tol) {
  const cplx v = kernel_spin_numeric_complex(a, axis, two_lambda, tol);
  if (a.max_asymmetry() <= kHermitianTolerance * std::max(1.0, a.max_abs()) &&
      std::abs(v.imag()) > kImaginaryResidue) {
    std::ostringstream os;
    os << "kernel_spin_numeric: imaginary residue " << v.imag() << " for a Hermitian operator";
    throw Error(ErrorCode::QuadratureFailure, os.str());
  }
  return v.real();
}

std::vector<cplx> kernel_spin_all(const ComplexMatrix& a, const SpinMatrices& spin, const Vec3& axis) {
  if (a.dim() != static_cast<std::size_t>(spin.two_j) + 1) {
    throw Error(ErrorCode::InvalidArgument, "kernel_spin: operator dimension must be two_j + 1");
  }
  return kernel_from_diagonal(diagonal_in_basis(a, axis_eigenbasis(spin, axis)));
}

cplx kernel_spin_closed_complex(const ComplexMatrix& a, const Vec3& axis, int two_lambda) {
  const int two_j = two_j_of(a, "kernel_spin_closed");
  check_lambda(two_j, two_lambda, "kernel_spin_closed");
  const auto all = kernel_spin_all(a, spin_matrices(two_j), axis);
  return all[static_cast<std::size_t>((two_lambda + two_j) / 2)];
}

double kernel_spin_closed(const ComplexMatrix& a, const Vec3& axis, int two_lambda) {
  if (a.max_asymmetry() > kHermitianTolerance * std::max(1.0, a.max_abs())) {
    throw Error(ErrorCode::NotHermitian,
                "kernel_spin_closed: operator is not Hermitian; use kernel_spin_closed_complex");
  }
  return kernel_spin_closed_complex(a, axis, two_lambda).real();
}

double exact_reconstruction(const SpinDensityMatrix& rho, const ComplexMatrix& a, unsigned sphere_order) {
  if (sphere_order < 8) throw Error(ErrorCode::InvalidArgument, "exact_reconstruction: sphere_order must be >= 8");
  if (a.dim() != rho.dim()) throw Error(ErrorCode::InvalidArgument, "exact_reconstruction: dimension mismatch");
  const auto spin = spin_matrices(rho.two_j());
  const GaussRule polar = gauss_legendre(sphere_order);
  const unsigned azimuth_count = 2 * sphere_order;
  cplx total = 0.0;
  for (unsigned ip = 0; ip < sphere_order; ++ip) {
    for (unsigned ia = 0; ia < azimuth_count; ++ia) {
      const Vec3 axis = sphere_point(polar.nodes[ip], 2.0 * kPi * ia / azimuth_count);
      const auto basis = axis_eigenbasis(spin, axis);
      const auto sigma = kernel_from_diagonal(diagonal_in_basis(a, basis));
      const auto p = probabilities_in_basis(rho.matrix(), basis);
      cplx point = 0.0;
      for (std::size_t k = 0; k < p.size(); ++k) point += sigma[k] * p[k];
      // dn / 4 pi = d(cos theta) d(phi) / 4 pi
      total += polar.weights[ip] * (2.0 * kPi / azimuth_count) / (4.0 * kPi) * point;
    }
  }
  return total.real();
}

}  // namespace qtomo
