#include "qtomo/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qtomo/density.hpp"
#include "qtomo/errors.hpp"
#include "qtomo/parallel.hpp"
#include "qtomo/quadrature.hpp"
#include "qtomo/rng.hpp"

namespace qtomo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxLevel = 200;
constexpr double kKernelTolerance = 1e-12;
constexpr double kTableTolerance = 1e-10;

void check_n_max(int n_max, const char* who) {
  if (n_max < 1 || n_max > kMaxLevel) {
    throw Error(ErrorCode::InvalidArgument, std::string(who) + ": n_max must be in [1, 200]");
  }
}

}  // namespace

FockDensityMatrix::FockDensityMatrix(int n_max, ComplexMatrix rho, double tail_tolerance)
    : n_max_(n_max), rho_(std::move(rho)) {
  check_n_max(n_max, "FockDensityMatrix");
  if (rho_.dim() != static_cast<std::size_t>(n_max) + 1) {
    throw Error(ErrorCode::InvalidState, "FockDensityMatrix: matrix dimension must be n_max + 1");
  }
  check_density_matrix(rho_, "FockDensityMatrix");
  if (tail_mass() > tail_tolerance) {
    std::ostringstream os;
    os << "FockDensityMatrix: tail mass <n_max|rho|n_max> = " << tail_mass() << " exceeds "
       << tail_tolerance;
    throw Error(ErrorCode::InvalidState, os.str());
  }
}

FockDensityMatrix FockDensityMatrix::number_state(int n, int n_max) {
  if (n < 0 || n >= n_max) {
    throw Error(ErrorCode::InvalidArgument, "FockDensityMatrix::number_state: need 0 <= n < n_max");
  }
  ComplexMatrix rho(static_cast<std::size_t>(n_max) + 1);
  rho(n, n) = 1.0;
  return FockDensityMatrix(n_max, std::move(rho));
}

FockDensityMatrix FockDensityMatrix::coherent(cplx alpha, int n_max) {
  check_n_max(n_max, "FockDensityMatrix::coherent");
  std::vector<cplx> amp(static_cast<std::size_t>(n_max) + 1);
  amp[0] = std::exp(-0.5 * std::norm(alpha));
  for (std::size_t n = 1; n < amp.size(); ++n) amp[n] = amp[n - 1] * alpha / std::sqrt(static_cast<double>(n));
  double norm = 0.0;
  for (const auto& c : amp) norm += std::norm(c);
  ComplexMatrix rho(amp.size());
  for (std::size_t i = 0; i < amp.size(); ++i)
    for (std::size_t k = 0; k < amp.size(); ++k) rho(i, k) = amp[i] * std::conj(amp[k]) / norm;
  return FockDensityMatrix(n_max, std::move(rho));
}

double homodyne_y_max(int n_max) { return std::sqrt(2.0 * (n_max + 1.0)) + 6.0; }

double quadrature_density(const FockDensityMatrix& rho, double phi, double y) {
  const std::size_t dim = rho.matrix().dim();
  std::vector<double> psi(dim);
  oscillator_eigenfunctions(y, psi);
  std::vector<cplx> f(dim);
  for (std::size_t n = 0; n < dim; ++n) f[n] = std::polar(psi[n], kPhaseSign * static_cast<double>(n) * phi);
  const double omega = sandwich(f, rho.matrix(), f).real();
  return std::max(0.0, omega);
}

ComplexMatrix truncated_quorum_operator(int n_max, double phi) {
  if (n_max < 1) throw Error(ErrorCode::InvalidArgument, "truncated_quorum_operator: n_max must be >= 1");
  ComplexMatrix y(static_cast<std::size_t>(n_max) + 1);
  const cplx down = std::polar(1.0, -phi);  // coefficient of a
  for (int n = 0; n < n_max; ++n) {
    // <n| (a e^{-i phi} + a^dag e^{i phi}) / sqrt 2 |n+1>
    const double amp = std::sqrt((n + 1.0) / 2.0);
    y(n, n + 1) = amp * down;
    y(n + 1, n) = amp * std::conj(down);
  }
  return y;
}

// ---------------------------------------------------------------- sampling

HomodyneSampler::HomodyneSampler(const FockDensityMatrix& rho)
    : n_max_(rho.n_max()), y_max_(homodyne_y_max(rho.n_max())) {
  if (rho.tail_mass() > kDefaultTailTolerance) {
    std::ostringstream os;
    os << "HomodyneSampler: tail mass " << rho.tail_mass() << " exceeds " << kDefaultTailTolerance;
    throw Error(ErrorCode::InvalidState, os.str());
  }
  const std::size_t dim = static_cast<std::size_t>(n_max_) + 1;
  const ComplexMatrix& m = rho.matrix();
  const GaussRule rule = gauss_legendre(8);
  std::vector<double> psi(dim);

  // c_l(y) = sum_n rho_{n, n+l} psi_n psi_{n+l}
  auto harmonics_at = [&](double y, std::vector<cplx>& out) {
    oscillator_eigenfunctions(y, psi);
    for (std::size_t l = 0; l < dim; ++l) {
      cplx s = 0.0;
      for (std::size_t n = 0; n + l < dim; ++n) s += m(n, n + l) * (psi[n] * psi[n + l]);
      out[l] = s;
    }
  };

  std::vector<cplx> c(dim), c_prev(dim);
  for (intervals_ = kBaseGridIntervals;; intervals_ *= 2) {
    step_ = 2.0 * y_max_ / static_cast<double>(intervals_);
    harmonics_.assign((intervals_ + 1) * dim, cplx{});
    double slope_bound = 0.0;
    harmonics_at(node_y(0), c_prev);
    for (std::size_t k = 0; k < intervals_; ++k) {
      const double a = node_y(k);
      for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
        harmonics_at(a + 0.5 * step_ * (1.0 + rule.nodes[q]), c);
        for (std::size_t l = 0; l < dim; ++l) {
          harmonics_[(k + 1) * dim + l] += 0.5 * step_ * rule.weights[q] * c[l];
        }
      }
      for (std::size_t l = 0; l < dim; ++l) harmonics_[(k + 1) * dim + l] += harmonics_[k * dim + l];
      harmonics_at(node_y(k + 1), c);
      double slope = 0.0;
      for (std::size_t l = 0; l < dim; ++l) slope += (l == 0 ? 1.0 : 2.0) * std::abs(c[l] - c_prev[l]);
      slope_bound = std::max(slope_bound, slope / step_);
      std::swap(c, c_prev);
    }
    // |F - linear interpolant| <= h^2 / 8 max|omega'|, with a factor 2 margin
    // on the finite-difference slope estimate.
    error_bound_ = step_ * step_ / 8.0 * 2.0 * slope_bound;
    if (error_bound_ <= kGridCdfTolerance || intervals_ >= (std::size_t{1} << 20)) break;
  }
  if (error_bound_ > kGridCdfTolerance) {
    throw Error(ErrorCode::NoConvergence, "HomodyneSampler: CDF grid could not reach the error target");
  }
}

void HomodyneSampler::fill_phases(double phi, std::vector<cplx>& phases) const {
  const cplx unit = std::polar(1.0, kPhaseSign * phi);
  phases.resize(static_cast<std::size_t>(n_max_) + 1);
  phases[0] = 1.0;
  for (std::size_t l = 1; l < phases.size(); ++l) phases[l] = phases[l - 1] * unit;
}

double HomodyneSampler::cdf_at(std::size_t node, std::span<const cplx> phases) const {
  const std::size_t dim = phases.size();
  const cplx* h = &harmonics_[node * dim];
  double s = h[0].real();
  for (std::size_t l = 1; l < dim; ++l) s += 2.0 * (phases[l] * h[l]).real();
  return s;
}

double HomodyneSampler::grid_cdf(double phi, std::size_t node) const {
  if (node > intervals_) throw Error(ErrorCode::InvalidArgument, "grid_cdf: node out of range");
  std::vector<cplx> phases;
  fill_phases(phi, phases);
  return cdf_at(node, phases);
}

HomodyneRecord HomodyneSampler::sample(std::uint64_t seed, std::uint64_t index) const {
  RecordStream stream(seed, index);
  const double phi = 2.0 * kPi * stream.next_double();
  const double u = stream.next_double();
  std::vector<cplx> phases;
  fill_phases(phi, phases);
  const double target = u * cdf_at(intervals_, phases);
  std::size_t lo = 0, hi = intervals_;
  double f_lo = cdf_at(lo, phases), f_hi = cdf_at(hi, phases);
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    const double f_mid = cdf_at(mid, phases);
    if (f_mid <= target) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
      f_hi = f_mid;
    }
  }
  const double span = f_hi - f_lo;
  const double frac = span > 0.0 ? std::clamp((target - f_lo) / span, 0.0, 1.0) : 0.5;
  return HomodyneRecord{phi < 2.0 * kPi ? phi : 0.0, node_y(lo) + frac * step_};
}

std::vector<HomodyneRecord> sample_homodyne(const FockDensityMatrix& rho, std::size_t count,
                                            std::uint64_t seed, unsigned workers) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "sample_homodyne: count must be >= 1");
  const HomodyneSampler sampler(rho);
  std::vector<HomodyneRecord> out(count);
  for_each_shard(count, workers, [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) out[i] = sampler.sample(seed, i);
  });
  return out;
}

// ---------------------------------------------------------------- kernels

double default_kernel_cutoff(int n, int l) { return 12.0 + 2.0 * std::sqrt(static_cast<double>(n + l)); }

cplx kernel_matrix_element(int n, int l, double y, double cutoff) {
  if (n < 0 || l < 0 || n + l > kMaxLevel) {
    throw Error(ErrorCode::InvalidArgument, "kernel_matrix_element: need n >= 0, l >= 0, n + l <= 200");
  }
  if (!(cutoff > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel_matrix_element: cutoff must be positive");
  // (-i)^l 2^{-l/2} sqrt(n! / (n+l)!)
  const double magnitude =
      std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(n + l + 1.0)) - 0.5 * l * std::numbers::ln2);
  static constexpr cplx kMinusIPowers[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  const cplx prefactor = magnitude * kMinusIPowers[l % 4];

  const auto un = static_cast<unsigned>(n), ul = static_cast<unsigned>(l);
  auto envelope = [&](double t) -> cplx {
    return std::pow(t, l + 1) * laguerre(un, ul, 0.5 * t * t) * std::exp(-0.25 * t * t);
  };
  const cplx integral = integrate_oscillatory(envelope, y, cutoff, kKernelTolerance / magnitude);
  return prefactor * integral;
}

cplx kernel_matrix_element(int n, int l, double y) {
  return kernel_matrix_element(n, l, y, default_kernel_cutoff(n, l));
}

cplx estimator_matrix_element(int n, int l, const HomodyneRecord& record, double cutoff) {
  if (n < 0 || n + l < 0) {
    throw Error(ErrorCode::InvalidArgument, "estimator_matrix_element: index out of range (need n >= 0, n + l >= 0)");
  }
  const int base = l >= 0 ? n : n + l;
  const int offset = std::abs(l);
  const double t = cutoff > 0.0 ? cutoff : default_kernel_cutoff(base, offset);
  const cplx value = std::polar(1.0, offset * record.phi) * kernel_matrix_element(base, offset, record.y, t);
  return l >= 0 ? value : std::conj(value);
}

double estimator_photon_number(const HomodyneRecord& record) { return record.y * record.y - 0.5; }

// ------------------------------------------------------- tabulated kernel

namespace {

std::vector<cplx> chebyshev_coefficients(const std::vector<cplx>& values) {
  const std::size_t n = values.size();
  std::vector<cplx> c(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      s += values[j] * std::cos(kPi * static_cast<double>(k) * (j + 0.5) / static_cast<double>(n));
    }
    c[k] = s * (2.0 / static_cast<double>(n));
  }
  c[0] *= 0.5;
  return c;
}

cplx clenshaw(std::span<const cplx> c, double x) {
  cplx b1 = 0.0, b2 = 0.0;
  for (std::size_t k = c.size(); k-- > 1;) {
    const cplx b0 = 2.0 * x * b1 - b2 + c[k];
    b2 = b1;
    b1 = b0;
  }
  return x * b1 - b2 + c[0];
}

}  // namespace

MatrixElementEstimator::MatrixElementEstimator(int n, int l, double y_range)
    : n_(l >= 0 ? n : n + l), l_(std::abs(l)), conjugate_(l < 0), range_(y_range) {
  if (n < 0 || n + l < 0 || n_ + l_ > kMaxLevel) {
    throw Error(ErrorCode::InvalidArgument, "MatrixElementEstimator: index out of range");
  }
  if (!(y_range > 0.0)) throw Error(ErrorCode::InvalidArgument, "MatrixElementEstimator: range must be positive");
  cutoff_ = default_kernel_cutoff(n_, l_);
  auto direct = [&](double x) { return kernel_matrix_element(n_, l_, x * range_, cutoff_); };
  for (std::size_t count = 128;; count *= 2) {
    std::vector<cplx> values(count);
    for (std::size_t j = 0; j < count; ++j) {
      values[j] = direct(std::cos(kPi * (j + 0.5) / static_cast<double>(count)));
    }
    coeffs_ = chebyshev_coefficients(values);
    // Check a few off-node points (near the ends, where interpolation is worst).
    double err = 0.0;
    for (double x : {-0.9993, -0.71, -0.377, 0.0013, 0.52, 0.881, 0.9997}) {
      err = std::max(err, std::abs(clenshaw(coeffs_, x) - direct(x)));
    }
    if (err <= kTableTolerance) break;
    if (count >= 4096) {
      throw Error(ErrorCode::NoConvergence, "MatrixElementEstimator: Chebyshev table did not converge");
    }
  }
}

cplx MatrixElementEstimator::kernel(double y) const {
  if (std::abs(y) <= range_) return clenshaw(coeffs_, y / range_);
  return kernel_matrix_element(n_, l_, y, cutoff_);
}

cplx MatrixElementEstimator::operator()(const HomodyneRecord& record) const {
  const cplx value = std::polar(1.0, l_ * record.phi) * kernel(record.y);
  return conjugate_ ? std::conj(value) : value;
}

}  // namespace qtomo
