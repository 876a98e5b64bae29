#include "qtomo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <type_traits>

#include "qtomo/errors.hpp"

namespace qtomo {

GaussRule gauss_legendre(unsigned order) {
  if (order == 0) throw Error(ErrorCode::InvalidArgument, "gauss_legendre: order must be positive");
  GaussRule rule{std::vector<double>(order), std::vector<double>(order)};
  const unsigned half = (order + 1) / 2;
  for (unsigned i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (unsigned k = 0; k < order; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

namespace {

const GaussRule& panel_rule() {
  static const GaussRule rule = gauss_legendre(kPanelOrder);
  return rule;
}

template <typename T, typename F>
T composite(const F& f, double a, double b, std::size_t panels) {
  const auto& rule = panel_rule();
  const double h = (b - a) / static_cast<double>(panels);
  T sum{};
  for (std::size_t p = 0; p < panels; ++p) {
    const double mid = a + (static_cast<double>(p) + 0.5) * h;
    T part{};
    for (unsigned k = 0; k < kPanelOrder; ++k) part += rule.weights[k] * f(mid + 0.5 * h * rule.nodes[k]);
    sum += part * (0.5 * h);
  }
  return sum;
}

bool agree(double x, double y, double tol) { return std::abs(x - y) <= tol; }
bool agree(cplx x, cplx y, double tol) {
  return agree(x.real(), y.real(), tol) && agree(x.imag(), y.imag(), tol);
}

template <typename T, typename F>
T refine(const F& f, double a, double b, double tol, std::size_t min_panels, const char* who) {
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, std::string(who) + ": tol must be positive");
  if (a == b) return T{};
  std::size_t panels = std::max<std::size_t>(min_panels, 1);
  T older{};
  T prev = composite<T>(f, a, b, panels);
  for (unsigned level = 0; level < kMaxRefinements; ++level) {
    panels *= 2;
    const T cur = composite<T>(f, a, b, panels);
    if (agree(prev, cur, tol)) return cur;
    older = prev;
    prev = cur;
  }
  std::ostringstream os;
  os << who << ": refinement cap exceeded on [" << a << ", " << b << "] (estimates " << older
     << " and " << prev << ")";
  if constexpr (std::is_same_v<T, double>) {
    throw QuadratureError(os.str(), older, prev);
  } else {
    if (std::abs(older.real() - prev.real()) >= std::abs(older.imag() - prev.imag()))
      throw QuadratureError(os.str(), older.real(), prev.real());
    throw QuadratureError(os.str(), older.imag(), prev.imag());
  }
}

}  // namespace

double integrate_real(const std::function<double(double)>& f, double a, double b, double tol) {
  return refine<double>(f, a, b, tol, 1, "integrate_real");
}

cplx integrate_complex(const std::function<cplx(double)>& f, double a, double b, double tol,
                       std::size_t min_panels) {
  return refine<cplx>(f, a, b, tol, min_panels, "integrate_complex");
}

cplx integrate_oscillatory(const std::function<cplx(double)>& g, double frequency, double cutoff,
                           double tol) {
  if (!(cutoff >= 0.0)) throw Error(ErrorCode::InvalidArgument, "integrate_oscillatory: cutoff must be >= 0");
  const double max_width = std::numbers::pi / (2.0 * (std::abs(frequency) + 1.0));
  const auto panels = static_cast<std::size_t>(std::ceil(cutoff / max_width));
  auto integrand = [&](double t) { return std::polar(1.0, frequency * t) * g(t); };
  return refine<cplx>(integrand, 0.0, cutoff, tol, std::max<std::size_t>(panels, 1),
                      "integrate_oscillatory");
}

}  // namespace qtomo
