#pragma once

#include <string>
#include <vector>

namespace qtomo {

struct CheckResult {
  std::string name;
  bool passed;
  std::string detail;
};

/// Oracle suites behind `qtomo validate`: Haar volume, formal-degree
/// orthogonality, spin kernel closed form vs quadrature, quadrature density
/// normalization, su(2) Jacobian identity and deterministic spin
/// reconstruction.
std::vector<CheckResult> run_validation();

std::string format_report(const std::vector<CheckResult>& results);

}  // namespace qtomo
