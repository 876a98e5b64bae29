#include "qtomo/random_ops.hpp"

#include <cmath>

namespace qtomo {

namespace {
cplx gaussian(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  const double re = n(rng);
  return {re, n(rng)};
}
}  // namespace

ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = gaussian(rng).real();
    for (std::size_t k = i + 1; k < dim; ++k) {
      m(i, k) = gaussian(rng);
      m(k, i) = std::conj(m(i, k));
    }
  }
  return m;
}

std::vector<cplx> random_unit_vector(std::size_t dim, std::mt19937_64& rng) {
  std::vector<cplx> v(dim);
  double norm = 0.0;
  for (auto& z : v) {
    z = gaussian(rng);
    norm += std::norm(z);
  }
  for (auto& z : v) z /= std::sqrt(norm);
  return v;
}

ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng) {
  return random_fock_density(dim, rng, 1.0);
}

ComplexMatrix random_fock_density(std::size_t dim, std::mt19937_64& rng, double decay) {
  ComplexMatrix g(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    const double scale = std::pow(decay, static_cast<double>(i));
    for (std::size_t k = 0; k < dim; ++k) g(i, k) = scale * gaussian(rng);
  }
  ComplexMatrix rho = g * g.adjoint();
  const double tr = rho.trace().real();
  rho *= 1.0 / tr;
  // exact Hermitian symmetry
  for (std::size_t i = 0; i < dim; ++i) {
    rho(i, i) = rho(i, i).real();
    for (std::size_t k = i + 1; k < dim; ++k) rho(k, i) = std::conj(rho(i, k));
  }
  return rho;
}

Vec3 random_axis(std::mt19937_64& rng) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v{n(rng), n(rng), n(rng)};
  const double norm = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  for (auto& x : v) x /= norm;
  return v;
}

}  // namespace qtomo
