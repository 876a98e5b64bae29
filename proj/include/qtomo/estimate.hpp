#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qtomo/homodyne.hpp"
#include "qtomo/numerics.hpp"
#include "qtomo/spin.hpp"

namespace qtomo {

/// Streaming count / mean / centered second moments of a complex sample,
/// real and imaginary parts tracked separately.
struct RunningEstimate {
  std::uint64_t count = 0;
  cplx mean{};
  double m2_re = 0.0;
  double m2_im = 0.0;
};

RunningEstimate update(RunningEstimate acc, cplx value);
/// Chan et al. pairwise combination.
RunningEstimate merge(const RunningEstimate& a, const RunningEstimate& b);

struct FinalEstimate {
  cplx mean;
  std::optional<double> stderr_re;  // empty when count < 2
  std::optional<double> stderr_im;
  std::uint64_t count;
};

FinalEstimate finalize(const RunningEstimate& acc);

enum class RecordKind { Homodyne, Spin };

const char* record_kind_name(RecordKind kind) noexcept;

using RecordSet = std::variant<std::vector<HomodyneRecord>, std::vector<SpinRecord>>;

RecordKind kind_of(const RecordSet& records) noexcept;
std::size_t size_of(const RecordSet& records) noexcept;

/// sigma(A) for a fixed target, defined on one record type.
class EstimatorKernel {
 public:
  using HomodyneFn = std::function<cplx(const HomodyneRecord&)>;
  using SpinFn = std::function<cplx(const SpinRecord&)>;

  EstimatorKernel(std::string id, HomodyneFn fn)
      : id_(std::move(id)), kind_(RecordKind::Homodyne), homodyne_(std::move(fn)) {}
  EstimatorKernel(std::string id, SpinFn fn)
      : id_(std::move(id)), kind_(RecordKind::Spin), spin_(std::move(fn)) {}

  const std::string& id() const noexcept { return id_; }
  RecordKind kind() const noexcept { return kind_; }

  cplx operator()(const HomodyneRecord& r) const;
  cplx operator()(const SpinRecord& r) const;

 private:
  std::string id_;
  RecordKind kind_;
  HomodyneFn homodyne_;
  SpinFn spin_;
};

/// Contiguous-shard accumulation; shard results are merged in shard order.
RunningEstimate accumulate(const RecordSet& records, const EstimatorKernel& kernel,
                           std::size_t shards = 1);

/// Average of the estimator over the records.
FinalEstimate reconstruct(const RecordSet& records, const EstimatorKernel& kernel,
                          std::size_t shards = 1);

}  // namespace qtomo
