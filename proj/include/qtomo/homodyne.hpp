#pragma once

#include <cstdint>
#include <vector>

#include "qtomo/numerics.hpp"

namespace qtomo {

inline constexpr double kDefaultTailTolerance = 1e-8;

/// Density matrix on the truncated Fock basis {0, ..., n_max}.
class FockDensityMatrix {
 public:
  FockDensityMatrix(int n_max, ComplexMatrix rho, double tail_tolerance = kDefaultTailTolerance);

  static FockDensityMatrix number_state(int n, int n_max);
  /// Truncated and renormalized coherent state |alpha><alpha|.
  static FockDensityMatrix coherent(cplx alpha, int n_max);

  int n_max() const noexcept { return n_max_; }
  const ComplexMatrix& matrix() const noexcept { return rho_; }
  double tail_mass() const { return rho_(n_max_, n_max_).real(); }

 private:
  int n_max_;
  ComplexMatrix rho_;
};

/// Outcome of the quorum observable Y_phi = cos(phi) Q + sin(phi) P.
struct HomodyneRecord {
  double phi;
  double y;

  bool operator==(const HomodyneRecord&) const = default;
};

/// Sign s in the quadrature eigenfunction expansion f_n(phi, y) =
/// e^{i s n phi} psi_n(y). Fixed by the truncated-operator oracle test.
inline constexpr int kPhaseSign = +1;

/// Half-width of the y window that carries all but ~1e-10 of the mass.
double homodyne_y_max(int n_max);

/// Probability density of Y_phi at y.
double quadrature_density(const FockDensityMatrix& rho, double phi, double y);

/// Y_phi on the truncated Fock basis built from the tridiagonal Q and P.
ComplexMatrix truncated_quorum_operator(int n_max, double phi);

/// Inverse-CDF sampler: the y-CDF of every phi is tabulated through its
/// Fourier harmonics in phi on a uniform grid over [-y_max, y_max].
class HomodyneSampler {
 public:
  explicit HomodyneSampler(const FockDensityMatrix& rho);

  HomodyneRecord sample(std::uint64_t seed, std::uint64_t index) const;

  /// Cumulative probability of Y_phi <= grid node k.
  double grid_cdf(double phi, std::size_t node) const;
  double y_max() const noexcept { return y_max_; }
  std::size_t intervals() const noexcept { return intervals_; }
  /// Upper bound of the linear-interpolation error of the tabulated CDF.
  double cdf_error_bound() const noexcept { return error_bound_; }

 private:
  double node_y(std::size_t k) const { return -y_max_ + step_ * static_cast<double>(k); }
  void fill_phases(double phi, std::vector<cplx>& phases) const;
  double cdf_at(std::size_t node, std::span<const cplx> phases) const;

  int n_max_;
  double y_max_;
  std::size_t intervals_;
  double step_;
  double error_bound_;
  std::vector<cplx> harmonics_;  // [(node * (n_max + 1)) + l]
};

inline constexpr double kGridCdfTolerance = 1e-4;
inline constexpr std::size_t kBaseGridIntervals = 2048;

std::vector<HomodyneRecord> sample_homodyne(const FockDensityMatrix& rho, std::size_t count,
                                            std::uint64_t seed, unsigned workers = 1);

/// 12 + 2 sqrt(n + l).
double default_kernel_cutoff(int n, int l);

/// Phi-independent factor K_{n,l}(y) of the matrix-element estimator, with the
/// radial integral truncated at cutoff.
cplx kernel_matrix_element(int n, int l, double y, double cutoff);
cplx kernel_matrix_element(int n, int l, double y);

/// Estimator of rho_{n+l, n}. For l < 0 it is the conjugate of the (n+l, -l)
/// estimator. A non-positive cutoff selects the default.
cplx estimator_matrix_element(int n, int l, const HomodyneRecord& record, double cutoff = 0.0);

/// Estimator of <a^dagger a>: y^2 - 1/2.
double estimator_photon_number(const HomodyneRecord& record);

/// Matrix-element estimator with K_{n,l} tabulated by Chebyshev interpolation
/// on [-y_range, y_range]; records outside fall back to direct quadrature.
class MatrixElementEstimator {
 public:
  MatrixElementEstimator(int n, int l, double y_range);

  cplx operator()(const HomodyneRecord& record) const;
  cplx kernel(double y) const;
  std::size_t nodes() const noexcept { return coeffs_.size(); }

 private:
  int n_, l_;            // normalized so that l_ >= 0
  bool conjugate_;
  double cutoff_;
  double range_;
  std::vector<cplx> coeffs_;
};

}  // namespace qtomo
