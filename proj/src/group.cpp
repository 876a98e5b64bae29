#include "qtomo/group.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qtomo/errors.hpp"
#include "qtomo/quadrature.hpp"
#include "qtomo/spin.hpp"

namespace qtomo {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kZeroEigenvalue = 1e-14;
constexpr double kImaginaryResidue = 1e-10;
}  // namespace

QuorumSpec QuorumSpec::weyl_heisenberg() {
  return QuorumSpec{GroupKind::WeylHeisenberg, 1, 1.0 / (2.0 * kPi), 2.0 * kPi, std::nullopt};
}

QuorumSpec QuorumSpec::su2(int two_j) {
  if (two_j < 1) throw Error(ErrorCode::InvalidArgument, "QuorumSpec::su2: two_j must be >= 1");
  return QuorumSpec{GroupKind::SU2, 2, (two_j + 1.0) / (16.0 * kPi * kPi), 4.0 * kPi, 2.0 * kPi};
}

double jacobian_from_eigenvalues(std::span<const cplx> eigenvalues) {
  cplx product = 1.0;
  for (const cplx& z : eigenvalues) {
    if (std::abs(z) < kZeroEigenvalue) continue;
    product *= (1.0 - std::exp(-z)) / z;
  }
  if (std::abs(product.imag()) > kImaginaryResidue) {
    std::ostringstream os;
    os << "jacobian_from_eigenvalues: imaginary residue " << product.imag()
       << " (eigenvalue list is not closed under conjugation)";
    throw Error(ErrorCode::InvalidArgument, os.str());
  }
  return product.real();
}

std::vector<cplx> su2_adjoint_eigenvalues(const Vec3& v) {
  // [i s_a/2, i s_b/2] = -eps_abc i s_c/2, so ad_v w = -v x w.
  ComplexMatrix ad(3);
  ad(0, 1) = v[2];
  ad(0, 2) = -v[1];
  ad(1, 0) = -v[2];
  ad(1, 2) = v[0];
  ad(2, 0) = v[1];
  ad(2, 1) = -v[0];
  // ad is real antisymmetric; i ad is Hermitian with real spectrum w, so
  // the eigenvalues of ad are -i w.
  const auto eig = hermitian_eigen(ad * cplx(0.0, 1.0));
  std::vector<cplx> out;
  out.reserve(3);
  for (double w : eig.values) out.emplace_back(0.0, -w);
  return out;
}

double radial_weight(const QuorumSpec& spec, double t) {
  if (!(t > 0.0)) throw Error(ErrorCode::InvalidArgument, "radial_weight: t must be positive");
  switch (spec.group) {
    case GroupKind::WeylHeisenberg:
      return t;
    case GroupKind::SU2: {
      if (t >= *spec.radial_cutoff) return 0.0;
      const double s = std::sin(0.5 * t);
      return 4.0 * s * s;
    }
  }
  return 0.0;
}

ComplexMatrix su2_element(double t, const Vec3& axis) {
  const double c = std::cos(0.5 * t);
  const double s = std::sin(0.5 * t);
  const cplx is(0.0, s);
  // cos(t/2) I + i sin(t/2) (n . sigma)
  return ComplexMatrix{{c + is * axis[2], is * cplx(axis[0], -axis[1])},
                       {is * cplx(axis[0], axis[1]), c - is * axis[2]}};
}

Vec3 sphere_point(double cos_theta, double azimuth) {
  const double sin_theta = std::sqrt(std::max(0.0, 1.0 - cos_theta * cos_theta));
  return {sin_theta * std::cos(azimuth), sin_theta * std::sin(azimuth), cos_theta};
}

namespace {

cplx chart_sum(const std::function<cplx(double, const Vec3&)>& f, unsigned radial_order,
               unsigned polar_order, unsigned azimuth_count) {
  const auto spec = QuorumSpec::su2(1);
  const GaussRule radial = gauss_legendre(radial_order);
  const GaussRule polar = gauss_legendre(polar_order);
  const double r_half = 0.5 * (*spec.radial_cutoff);
  const double az_weight = 2.0 * kPi / azimuth_count;

  cplx total = 0.0;
  for (unsigned ip = 0; ip < polar_order; ++ip) {
    for (unsigned ia = 0; ia < azimuth_count; ++ia) {
      const Vec3 axis = sphere_point(polar.nodes[ip], az_weight * ia);
      cplx line = 0.0;
      for (unsigned ir = 0; ir < radial_order; ++ir) {
        const double t = r_half * (1.0 + radial.nodes[ir]);
        line += radial.weights[ir] * radial_weight(spec, t) * f(t, axis);
      }
      total += polar.weights[ip] * az_weight * r_half * line;
    }
  }
  return total;
}

}  // namespace

cplx haar_integral_su2_chart(const std::function<cplx(double, const Vec3&)>& f, double tol) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "haar_integral_su2: tol must be positive");
  unsigned radial = 16, polar = 8, azimuth = 16;
  cplx prev = chart_sum(f, radial, polar, azimuth);
  constexpr int kLevels = 4;
  for (int level = 0; level < kLevels; ++level) {
    radial *= 2;
    polar *= 2;
    azimuth *= 2;
    const cplx cur = chart_sum(f, radial, polar, azimuth);
    if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
    if (level + 1 == kLevels) {
      throw QuadratureError("haar_integral_su2: no convergence", std::abs(prev), std::abs(cur));
    }
    prev = cur;
  }
  return prev;
}

cplx haar_integral_su2(const std::function<cplx(const ComplexMatrix&)>& f, double tol) {
  return haar_integral_su2_chart(
      [&](double t, const Vec3& axis) { return f(su2_element(t, axis)); }, tol);
}

OrthogonalityCheck orthogonality_residual(int two_j, std::span<const cplx> u1,
                                          std::span<const cplx> u2, std::span<const cplx> v1,
                                          std::span<const cplx> v2, double tol) {
  if (two_j < 1) throw Error(ErrorCode::InvalidArgument, "orthogonality_residual: two_j must be >= 1");
  const std::size_t dim = static_cast<std::size_t>(two_j) + 1;
  for (auto s : {u1, u2, v1, v2}) {
    if (s.size() != dim) {
      throw Error(ErrorCode::InvalidArgument, "orthogonality_residual: vectors must have dimension 2j+1");
    }
  }
  const auto spin = spin_matrices(two_j);

  // Memoize the axis eigendecomposition; the chart sum visits all radii of
  // one axis consecutively.
  Vec3 cached_axis{2.0, 0.0, 0.0};
  HermitianEigen cached;
  auto integrand = [&](double t, const Vec3& axis) {
    if (axis != cached_axis) {
      cached = hermitian_eigen(axis_operator(spin, axis));
      cached_axis = axis;
    }
    const ComplexMatrix u = unitary_evolution(cached, t);
    // <U v, u> = conj(<u, U v>)
    const cplx a = std::conj(sandwich(u1, u, v1));
    const cplx b = std::conj(sandwich(u2, u, v2));
    return std::conj(a) * b;
  };
  const cplx lhs = haar_integral_su2_chart(integrand, tol);
  const double d = QuorumSpec::su2(two_j).formal_degree;
  const cplx rhs = inner(u1, u2) * inner(v2, v1) / d;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

}  // namespace qtomo
