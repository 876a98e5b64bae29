#include <algorithm>
#include <cmath>
#include <random>

#include "doctest.h"
#include "qtomo/errors.hpp"
#include "qtomo/estimate.hpp"
#include "qtomo/observables.hpp"
#include "qtomo/random_ops.hpp"

using namespace qtomo;

namespace {

RunningEstimate fold(const std::vector<cplx>& values) {
  RunningEstimate acc;
  for (const cplx& v : values) acc = update(acc, v);
  return acc;
}

void check_close(const RunningEstimate& a, const RunningEstimate& b, double rel) {
  CHECK(a.count == b.count);
  CHECK(std::abs(a.mean - b.mean) <= rel * std::max(1.0, std::abs(b.mean)));
  CHECK(std::abs(a.m2_re - b.m2_re) <= rel * std::max(1.0, b.m2_re));
  CHECK(std::abs(a.m2_im - b.m2_im) <= rel * std::max(1.0, b.m2_im));
}

}  // namespace

TEST_CASE("update: examples") {
  const auto one = update(RunningEstimate{}, cplx(5.0));
  CHECK(one.count == 1);
  CHECK(one.mean == cplx(5.0));
  CHECK(one.m2_re == 0.0);
  const auto three = fold({1.0, 2.0, 3.0});
  CHECK(three.mean.real() == doctest::Approx(2.0));
  CHECK(three.m2_re / (three.count - 1) == doctest::Approx(1.0));
  const auto same = finalize(fold({cplx(2.0, 1.0), cplx(2.0, 1.0), cplx(2.0, 1.0)}));
  CHECK(*same.stderr_re == 0.0);
  CHECK(*same.stderr_im == 0.0);
}

TEST_CASE("merge: examples and properties") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g(3.0, 2.0);
  const auto x = fold({1.0, cplx(2.0, -1.0), 4.5});
  check_close(merge(RunningEstimate{}, x), x, 0.0);
  check_close(merge(x, RunningEstimate{}), x, 0.0);
  check_close(merge(fold({1.0, 2.0}), fold({3.0})), fold({1.0, 2.0, 3.0}), 1e-12);

  std::vector<std::vector<cplx>> shards(4);
  std::vector<cplx> all;
  for (int s = 0; s < 4; ++s) {
    for (int k = 0; k < 50 + 13 * s; ++k) {
      shards[s].push_back(cplx(g(rng), g(rng)));
      all.push_back(shards[s].back());
    }
  }
  const auto whole = fold(all);
  std::vector<int> order{0, 1, 2, 3};
  do {
    RunningEstimate acc;
    for (int s : order) acc = merge(acc, fold(shards[s]));
    check_close(acc, whole, 1e-12);
  } while (std::next_permutation(order.begin(), order.end()));
  // associativity
  const auto a = fold(shards[0]), b = fold(shards[1]), c = fold(shards[2]);
  check_close(merge(merge(a, b), c), merge(a, merge(b, c)), 1e-12);
}

TEST_CASE("finalize: examples") {
  const auto e = finalize(fold({1.0, 2.0, 3.0}));
  CHECK(e.mean == cplx(2.0));
  CHECK(*e.stderr_re == doctest::Approx(1.0 / std::sqrt(3.0)));
  CHECK(e.count == 3);
  const auto single = finalize(fold({7.0}));
  CHECK(single.mean == cplx(7.0));
  CHECK_FALSE(single.stderr_re.has_value());
  CHECK_FALSE(single.stderr_im.has_value());
  const auto imag = finalize(fold({cplx(0.0, 1.0), cplx(0.0, 4.0), cplx(0.0, -2.0)}));
  CHECK(*imag.stderr_re == 0.0);
  CHECK(*imag.stderr_im > 0.0);
  CHECK_THROWS_AS(finalize(RunningEstimate{}), Error);
}

TEST_CASE("reconstruct: spin identity target has mean 1") {
  std::mt19937_64 rng(8);
  const SpinDensityMatrix rho(2, random_density(3, rng));
  const RecordSet records = sample_spin(rho, 20000, 1);
  const auto est = reconstruct(records, make_kernel(SpinOperatorTarget{"I"}, KernelContext{2, 0.0}));
  CHECK(std::abs(est.mean.real() - 1.0) <= 4.0 * *est.stderr_re);
  CHECK(est.mean.imag() == 0.0);
  // at j = 1/2 both outcomes carry sigma(I) = 1, so the mean is exact
  const RecordSet half = sample_spin(SpinDensityMatrix::maximally_mixed(1), 500, 2);
  const auto exact = reconstruct(half, make_kernel(SpinOperatorTarget{"I"}, KernelContext{1, 0.0}));
  CHECK(std::abs(exact.mean - cplx(1.0)) <= 1e-12);
  CHECK(*exact.stderr_re <= 1e-12);
}

TEST_CASE("reconstruct: vacuum photon number within 4 stderr of 0") {
  const RecordSet records = sample_homodyne(FockDensityMatrix::number_state(0, 3), 100000, 4);
  const auto est = reconstruct(records, make_kernel(PhotonNumberTarget{}, KernelContext{}));
  CHECK(std::abs(est.mean.real()) <= 4.0 * *est.stderr_re);
  CHECK(est.count == 100000);
}

TEST_CASE("reconstruct: shard-count independence") {
  std::mt19937_64 rng(9);
  const SpinDensityMatrix rho(3, random_density(4, rng));
  const RecordSet records = sample_spin(rho, 10007, 2);
  const auto kernel = make_kernel(SpinMatrixTarget{random_hermitian(4, rng)}, KernelContext{3, 0.0});
  const auto base = reconstruct(records, kernel, 1);
  for (std::size_t shards : {2u, 3u, 4u, 8u, 64u}) {
    const auto e = reconstruct(records, kernel, shards);
    CHECK(std::abs(e.mean - base.mean) <= 1e-12 * std::max(1.0, std::abs(base.mean)));
    CHECK(std::abs(*e.stderr_re - *base.stderr_re) <= 1e-12 * std::max(1.0, *base.stderr_re));
    CHECK(e.count == base.count);
  }
}

TEST_CASE("reconstruct: errors") {
  const RecordSet empty = std::vector<SpinRecord>{};
  const auto kernel = make_kernel(SpinOperatorTarget{"Jz"}, KernelContext{1, 0.0});
  try {
    reconstruct(empty, kernel);
    FAIL("expected EmptyStream");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyStream);
  }
  const RecordSet homodyne = std::vector<HomodyneRecord>{{0.1, 0.2}};
  try {
    reconstruct(homodyne, kernel);
    FAIL("expected RecordMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RecordMismatch);
  }
  // spin records that do not belong to the target's spin
  const RecordSet wrong_j = std::vector<SpinRecord>{{{0.0, 0.0, 1.0}, 2}};
  try {
    reconstruct(wrong_j, kernel);
    FAIL("expected RecordMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RecordMismatch);
  }
  CHECK_THROWS_AS(make_kernel(SpinOperatorTarget{"Jz"}, KernelContext{}), Error);
}

TEST_CASE("observables: ids and kinds") {
  CHECK(target_id(MatrixElementTarget{1, 2}) == "rho[3,1]");
  CHECK(target_id(PhotonNumberTarget{}) == "photon_number");
  CHECK(target_id(SpinOperatorTarget{"Jx"}) == "Jx");
  CHECK(target_kind(MatrixElementTarget{0, 0}) == RecordKind::Homodyne);
  CHECK(target_kind(SpinOperatorTarget{"Jx"}) == RecordKind::Spin);
  CHECK_THROWS_AS(spin_target_matrix(SpinOperatorTarget{"Jw"}, 1), Error);
  const ComplexMatrix bad{{0.0, 1.0}, {0.0, 0.0}};
  CHECK_THROWS_AS(spin_target_matrix(SpinMatrixTarget{bad}, 1), Error);
  CHECK_THROWS_AS(spin_target_matrix(SpinMatrixTarget{ComplexMatrix::identity(3)}, 1), Error);
}
