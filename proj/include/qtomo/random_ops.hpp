#pragma once

#include <random>
#include <vector>

#include "qtomo/numerics.hpp"

namespace qtomo {

/// Random test objects for the oracle suites.
ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& rng);
/// Unit vector with independent standard-normal components before scaling.
std::vector<cplx> random_unit_vector(std::size_t dim, std::mt19937_64& rng);
/// Full-rank density matrix G G^dagger / Tr, G Ginibre.
ComplexMatrix random_density(std::size_t dim, std::mt19937_64& rng);
/// Density matrix whose weight decays geometrically with the level index, so
/// the last level carries negligible mass.
ComplexMatrix random_fock_density(std::size_t dim, std::mt19937_64& rng, double decay = 0.5);
Vec3 random_axis(std::mt19937_64& rng);

}  // namespace qtomo
