#pragma once

#include <optional>
#include <string>
#include <variant>

#include "qtomo/estimate.hpp"

namespace qtomo {

/// rho_{n+l, n} on homodyne data.
struct MatrixElementTarget {
  int n;
  int l;
};
struct PhotonNumberTarget {};
/// One of "I", "Jx", "Jy", "Jz".
struct SpinOperatorTarget {
  std::string name;
};
struct SpinMatrixTarget {
  ComplexMatrix matrix;
};

using Target = std::variant<MatrixElementTarget, PhotonNumberTarget, SpinOperatorTarget, SpinMatrixTarget>;

std::string target_id(const Target& target);
RecordKind target_kind(const Target& target);

/// The operator A of a spin target at the given spin.
ComplexMatrix spin_target_matrix(const Target& target, int two_j);

struct KernelContext {
  std::optional<int> two_j;  // required for spin targets
  double y_range = 0.0;      // tabulation half-width for matrix elements
};

EstimatorKernel make_kernel(const Target& target, const KernelContext& context);

}  // namespace qtomo
