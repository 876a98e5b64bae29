#include "qtomo/density.hpp"

#include <cmath>
#include <sstream>

#include "qtomo/errors.hpp"

namespace qtomo {

void check_density_matrix(const ComplexMatrix& m, std::string_view who) {
  auto fail = [&](const std::string& why) {
    throw Error(ErrorCode::InvalidState, std::string(who) + ": " + why);
  };
  if (m.dim() == 0) fail("empty matrix");
  for (const cplx& z : m.data()) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) fail("non-finite entry");
  }
  if (const double asym = m.max_asymmetry(); asym > kHermitianTolerance) {
    std::ostringstream os;
    os << "not Hermitian (max asymmetry " << asym << ")";
    fail(os.str());
  }
  if (const double tr = m.trace().real(); std::abs(tr - 1.0) > kTraceTolerance) {
    std::ostringstream os;
    os << "trace " << tr << " differs from 1";
    fail(os.str());
  }
  const auto eig = hermitian_eigen(m);
  if (eig.values.front() < -kPositivityTolerance) {
    std::ostringstream os;
    os << "negative eigenvalue " << eig.values.front();
    fail(os.str());
  }
}

}  // namespace qtomo
