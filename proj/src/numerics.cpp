#include "qtomo/numerics.hpp"

#include <algorithm>
#include <limits>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "qtomo/errors.hpp"

namespace qtomo {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NotHermitian: return "not_hermitian";
    case ErrorCode::NoConvergence: return "no_convergence";
    case ErrorCode::QuadratureFailure: return "quadrature_failure";
    case ErrorCode::InvalidState: return "invalid_state";
    case ErrorCode::RecordMismatch: return "record_mismatch";
    case ErrorCode::EmptyStream: return "empty_stream";
    case ErrorCode::Io: return "io_error";
    case ErrorCode::Format: return "format_error";
  }
  return "unknown";
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : dim_(rows.size()), data_(rows.size() * rows.size()) {
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) {
      throw Error(ErrorCode::InvalidArgument, "ComplexMatrix: rows must form a square matrix");
    }
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(i * dim_));
    ++i;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::max_asymmetry() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i; j < dim_; ++j)
      m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  if (rhs.dim_ != dim_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= rhs.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  const std::size_t n = a.dim_;
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

std::vector<cplx> operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.dim_ != v.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  std::vector<cplx> r(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < a.dim_; ++j) s += a(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) s += a(i, k) * b(k, i);
  return s;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

cplx sandwich(std::span<const cplx> u, const ComplexMatrix& m, std::span<const cplx> v) {
  return inner(u, m * v);
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::InvalidArgument, "dimension mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.data().size(); ++k)
    m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
  return m;
}

std::vector<cplx> HermitianEigen::column(std::size_t k) const {
  std::vector<cplx> c(vectors.dim());
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = vectors(i, k);
  return c;
}

namespace {

double off_diagonal_norm2(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return s;
}

}  // namespace

HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0 || n > kMaxEigenDim) {
    throw Error(ErrorCode::InvalidArgument,
                "hermitian_eigen: dimension must be in [1, 512], got " + std::to_string(n));
  }
  const double scale = m.max_abs();
  const double asym = m.max_asymmetry();
  if (asym > kHermitianTolerance * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "hermitian_eigen: matrix is not Hermitian (max asymmetry " << asym << ")";
    throw Error(ErrorCode::NotHermitian, os.str());
  }

  ComplexMatrix a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  double total = 0.0;
  for (const auto& z : a.data()) total += std::norm(z);
  const double eps = std::numeric_limits<double>::epsilon();
  const double stop = static_cast<double>(n * n) * eps * eps * total;

  constexpr int kMaxSweeps = 100;
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm2(a) <= stop) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        // Skip rotations that would not change the diagonal in floating point.
        if (sweep > 3 && std::abs(app) + 100.0 * mag == std::abs(app) &&
            std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
          a(p, q) = a(q, p) = 0.0;
          continue;
        }
        const cplx phase = apq / mag;
        const double theta = 0.5 * std::atan2(2.0 * mag, aqq - app);
        const double c = std::cos(theta);
        const double s = std::sin(theta);
        // Columns p, q are multiplied by U = [[c, s], [-s e^{-i phi}, c e^{-i phi}]].
        const cplx upp = c, upq = s;
        const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = a(k, p), y = a(k, q);
          a(k, p) = x * upp + y * uqp;
          a(k, q) = x * upq + y * uqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = a(p, k), y = a(q, k);
          a(p, k) = std::conj(upp) * x + std::conj(uqp) * y;
          a(q, k) = std::conj(upq) * x + std::conj(uqq) * y;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx x = v(k, p), y = v(k, q);
          v(k, p) = x * upp + y * uqp;
          v(k, q) = x * upq + y * uqq;
        }
      }
    }
  }
  if (sweep == kMaxSweeps && off_diagonal_norm2(a) > stop) {
    std::ostringstream os;
    os << "hermitian_eigen: no convergence after " << kMaxSweeps
       << " sweeps (off-diagonal norm " << std::sqrt(off_diagonal_norm2(a)) << ")";
    throw Error(ErrorCode::NoConvergence, os.str());
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });
  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

ComplexMatrix unitary_evolution(const HermitianEigen& eig, double t) {
  const std::size_t n = eig.values.size();
  std::vector<cplx> phases(n);
  for (std::size_t k = 0; k < n; ++k) phases[k] = std::polar(1.0, t * eig.values[k]);
  ComplexMatrix r(n);
  const auto& v = eig.vectors;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * phases[k] * std::conj(v(j, k));
      r(i, j) = s;
    }
  return r;
}

ComplexMatrix unitary_evolution(const ComplexMatrix& h, double t) {
  return unitary_evolution(hermitian_eigen(h), t);
}

double laguerre(unsigned n, unsigned l, double x) {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + l - x;
  for (unsigned k = 1; k < n; ++k) {
    const double next = ((2.0 * k + l + 1.0 - x) * cur - (k + l) * prev) / (k + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

void oscillator_eigenfunctions(double x, std::span<double> out) {
  if (out.empty()) return;
  out[0] = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (out.size() == 1) return;
  out[1] = std::numbers::sqrt2 * x * out[0];
  for (std::size_t k = 1; k + 1 < out.size(); ++k) {
    const double kk = static_cast<double>(k);
    out[k + 1] = std::sqrt(2.0 / (kk + 1.0)) * x * out[k] - std::sqrt(kk / (kk + 1.0)) * out[k - 1];
  }
}

double oscillator_eigenfunction(unsigned n, double x) {
  std::vector<double> psi(n + 1);
  oscillator_eigenfunctions(x, psi);
  return psi[n];
}

}  // namespace qtomo
