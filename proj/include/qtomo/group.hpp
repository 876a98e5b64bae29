#pragma once

#include <functional>
#include <optional>
#include <span>

#include "qtomo/numerics.hpp"

namespace qtomo {

enum class GroupKind { WeylHeisenberg, SU2 };

/// Chart data for one of the two concrete quorum groups.
struct QuorumSpec {
  GroupKind group;
  int sphere_dim;                       // m
  double formal_degree;                 // d
  double sphere_volume;                 // C_m
  std::optional<double> radial_cutoff;  // empty = unbounded

  static QuorumSpec weyl_heisenberg();
  static QuorumSpec su2(int two_j);
};

/// det d(exp)_v from the eigenvalues of ad_v: prod (1 - e^{-z}) / z, with the
/// factor for z = 0 equal to 1. Throws if the product is not real.
double jacobian_from_eigenvalues(std::span<const cplx> eigenvalues);

/// Eigenvalues of ad_v on su(2) in the basis (i sigma_k / 2), obtained from
/// the Hermitian matrix i ad_v.
std::vector<cplx> su2_adjoint_eigenvalues(const Vec3& v);

/// chi_V(t n) |det d(exp)_{t n}| t^m.
double radial_weight(const QuorumSpec& spec, double t);

/// exp(i t n.sigma / 2), the SU(2) element at chart point t n.
ComplexMatrix su2_element(double t, const Vec3& axis);

/// Unit vector from polar angle (measured from +z) and azimuth.
Vec3 sphere_point(double cos_theta, double azimuth);

/// Haar integral over SU(2) through the exponential chart, normalized so the
/// total volume is 16 pi^2. The integrand receives the chart radius t in
/// (0, 2 pi) and the unit axis. Orders double until two levels agree within
/// tol relative to max(1, |I|).
cplx haar_integral_su2_chart(const std::function<cplx(double, const Vec3&)>& f, double tol);

/// Same integral with the integrand evaluated on the 2x2 group element.
cplx haar_integral_su2(const std::function<cplx(const ComplexMatrix&)>& f, double tol);

struct OrthogonalityCheck {
  cplx lhs;
  cplx rhs;
  double residual;
};

/// Haar integral of conj(<U v1, u1>) <U v2, u2> for the spin-j irrep, compared
/// with (1/d) <u1, u2> <v2, v1>.
OrthogonalityCheck orthogonality_residual(int two_j, std::span<const cplx> u1,
                                          std::span<const cplx> u2, std::span<const cplx> v1,
                                          std::span<const cplx> v2, double tol = 1e-9);

}  // namespace qtomo
