#include "qtomo/observables.hpp"

#include <memory>

#include "qtomo/errors.hpp"

namespace qtomo {

namespace {
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

std::string target_id(const Target& target) {
  return std::visit(
      overloaded{
          [](const MatrixElementTarget& t) {
            return "rho[" + std::to_string(t.n + t.l) + "," + std::to_string(t.n) + "]";
          },
          [](const PhotonNumberTarget&) { return std::string("photon_number"); },
          [](const SpinOperatorTarget& t) { return t.name; },
          [](const SpinMatrixTarget&) { return std::string("matrix"); },
      },
      target);
}

RecordKind target_kind(const Target& target) {
  return std::holds_alternative<MatrixElementTarget>(target) ||
                 std::holds_alternative<PhotonNumberTarget>(target)
             ? RecordKind::Homodyne
             : RecordKind::Spin;
}

ComplexMatrix spin_target_matrix(const Target& target, int two_j) {
  if (const auto* named = std::get_if<SpinOperatorTarget>(&target)) {
    const auto spin = spin_matrices(two_j);
    if (named->name == "I") return ComplexMatrix::identity(static_cast<std::size_t>(two_j) + 1);
    if (named->name == "Jx") return spin.jx;
    if (named->name == "Jy") return spin.jy;
    if (named->name == "Jz") return spin.jz;
    throw Error(ErrorCode::InvalidArgument, "unknown spin operator '" + named->name + "' (expected I, Jx, Jy, Jz)");
  }
  if (const auto* explicit_matrix = std::get_if<SpinMatrixTarget>(&target)) {
    const auto& m = explicit_matrix->matrix;
    if (m.dim() != static_cast<std::size_t>(two_j) + 1) {
      throw Error(ErrorCode::InvalidArgument, "target matrix dimension does not match two_j + 1");
    }
    if (m.max_asymmetry() > kHermitianTolerance * std::max(1.0, m.max_abs())) {
      throw Error(ErrorCode::NotHermitian, "target matrix must be Hermitian");
    }
    return m;
  }
  throw Error(ErrorCode::RecordMismatch, "target '" + target_id(target) + "' is not a spin observable");
}

EstimatorKernel make_kernel(const Target& target, const KernelContext& context) {
  const std::string id = target_id(target);
  if (const auto* me = std::get_if<MatrixElementTarget>(&target)) {
    auto table = std::make_shared<MatrixElementEstimator>(me->n, me->l,
                                                          context.y_range > 0.0 ? context.y_range : 1.0);
    return EstimatorKernel(id, EstimatorKernel::HomodyneFn(
                                   [table](const HomodyneRecord& r) { return (*table)(r); }));
  }
  if (std::holds_alternative<PhotonNumberTarget>(target)) {
    return EstimatorKernel(id, EstimatorKernel::HomodyneFn([](const HomodyneRecord& r) {
                             return cplx(estimator_photon_number(r), 0.0);
                           }));
  }
  if (!context.two_j) {
    throw Error(ErrorCode::InvalidArgument, "spin target '" + id + "' needs two_j");
  }
  const int two_j = *context.two_j;
  auto spin = std::make_shared<const SpinMatrices>(spin_matrices(two_j));
  auto a = std::make_shared<const ComplexMatrix>(spin_target_matrix(target, two_j));
  return EstimatorKernel(id, EstimatorKernel::SpinFn([spin, a, two_j](const SpinRecord& r) {
                           try {
                             check_spin_record(r, two_j);
                           } catch (const Error& e) {
                             throw Error(ErrorCode::RecordMismatch, e.what());
                           }
                           const auto values = kernel_spin_all(*a, *spin, r.axis);
                           return values[static_cast<std::size_t>((r.two_m + two_j) / 2)];
                         }));
}

}  // namespace qtomo
