#pragma once

#include <functional>
#include <vector>

#include "qtomo/numerics.hpp"

namespace qtomo {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

/// Gauss-Legendre rule of the given order (Newton on P_n).
GaussRule gauss_legendre(unsigned order);

inline constexpr unsigned kPanelOrder = 16;
inline constexpr unsigned kMaxRefinements = 18;

/// Composite order-16 Gauss-Legendre on [a, b]. The panel count doubles until
/// two consecutive levels agree within tol (absolute).
double integrate_real(const std::function<double(double)>& f, double a, double b,
                      double tol);

/// Integral of exp(i frequency t) g(t) over [0, cutoff]. Panels are never wider
/// than pi / (2 (|frequency| + 1)).
cplx integrate_oscillatory(const std::function<cplx(double)>& g, double frequency,
                           double cutoff, double tol);

/// Composite complex integral on [a, b] starting from min_panels panels; both
/// components must converge within tol.
cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b,
                       double tol, std::size_t min_panels = 1);

}  // namespace qtomo
