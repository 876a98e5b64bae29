#pragma once

#include <string_view>

#include "qtomo/numerics.hpp"

namespace qtomo {

inline constexpr double kTraceTolerance = 1e-10;
inline constexpr double kPositivityTolerance = 1e-10;

/// Throws InvalidState unless m is Hermitian, unit-trace and positive
/// semidefinite within tolerance.
void check_density_matrix(const ComplexMatrix& m, std::string_view who);

}  // namespace qtomo
