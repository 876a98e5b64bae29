#include "qtomo/estimate.hpp"

#include <cmath>

#include "qtomo/errors.hpp"
#include "qtomo/parallel.hpp"

namespace qtomo {

RunningEstimate update(RunningEstimate acc, cplx value) {
  acc.count += 1;
  const double n = static_cast<double>(acc.count);
  const cplx delta = value - acc.mean;
  acc.mean += delta / n;
  const cplx delta2 = value - acc.mean;
  acc.m2_re += delta.real() * delta2.real();
  acc.m2_im += delta.imag() * delta2.imag();
  return acc;
}

RunningEstimate merge(const RunningEstimate& a, const RunningEstimate& b) {
  if (a.count == 0) return b;
  if (b.count == 0) return a;
  const double na = static_cast<double>(a.count);
  const double nb = static_cast<double>(b.count);
  const double n = na + nb;
  const cplx delta = b.mean - a.mean;
  RunningEstimate r;
  r.count = a.count + b.count;
  r.mean = (na * a.mean + nb * b.mean) / n;
  r.m2_re = a.m2_re + b.m2_re + delta.real() * delta.real() * na * nb / n;
  r.m2_im = a.m2_im + b.m2_im + delta.imag() * delta.imag() * na * nb / n;
  return r;
}

FinalEstimate finalize(const RunningEstimate& acc) {
  if (acc.count == 0) throw Error(ErrorCode::EmptyStream, "finalize: no samples");
  FinalEstimate out{acc.mean, std::nullopt, std::nullopt, acc.count};
  if (acc.count >= 2) {
    const double n = static_cast<double>(acc.count);
    out.stderr_re = std::sqrt(acc.m2_re / (n - 1.0)) / std::sqrt(n);
    out.stderr_im = std::sqrt(acc.m2_im / (n - 1.0)) / std::sqrt(n);
  }
  return out;
}

const char* record_kind_name(RecordKind kind) noexcept {
  return kind == RecordKind::Homodyne ? "homodyne" : "spin";
}

RecordKind kind_of(const RecordSet& records) noexcept {
  return std::holds_alternative<std::vector<HomodyneRecord>>(records) ? RecordKind::Homodyne
                                                                      : RecordKind::Spin;
}

std::size_t size_of(const RecordSet& records) noexcept {
  return std::visit([](const auto& v) { return v.size(); }, records);
}

cplx EstimatorKernel::operator()(const HomodyneRecord& r) const {
  if (kind_ != RecordKind::Homodyne) {
    throw Error(ErrorCode::RecordMismatch, "estimator '" + id_ + "' expects spin records");
  }
  return homodyne_(r);
}

cplx EstimatorKernel::operator()(const SpinRecord& r) const {
  if (kind_ != RecordKind::Spin) {
    throw Error(ErrorCode::RecordMismatch, "estimator '" + id_ + "' expects homodyne records");
  }
  return spin_(r);
}

RunningEstimate accumulate(const RecordSet& records, const EstimatorKernel& kernel, std::size_t shards) {
  const std::size_t count = size_of(records);
  if (count == 0) throw Error(ErrorCode::EmptyStream, "reconstruct: empty record stream");
  if (kind_of(records) != kernel.kind()) {
    throw Error(ErrorCode::RecordMismatch, std::string("reconstruct: estimator '") + kernel.id() +
                                               "' needs " + record_kind_name(kernel.kind()) +
                                               " records, got " + record_kind_name(kind_of(records)));
  }
  shards = std::max<std::size_t>(1, std::min(shards, count));
  std::vector<RunningEstimate> parts(shards);
  std::visit(
      [&](const auto& list) {
        for_each_shard(count, shards, [&](std::size_t s, std::size_t begin, std::size_t end) {
          RunningEstimate acc;
          for (std::size_t i = begin; i < end; ++i) acc = update(acc, kernel(list[i]));
          parts[s] = acc;
        });
      },
      records);
  RunningEstimate total;
  for (const auto& p : parts) total = merge(total, p);
  return total;
}

FinalEstimate reconstruct(const RecordSet& records, const EstimatorKernel& kernel, std::size_t shards) {
  return finalize(accumulate(records, kernel, shards));
}

}  // namespace qtomo
