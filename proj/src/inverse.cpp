#include "jbc/inverse.hpp"

namespace jbc {

std::string_view to_string(RecoveryPath p) {
  return p == RecoveryPath::BoundaryControl ? "boundary_control" : "hankel";
}

std::vector<double> RecoveryResult::a() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < horizon; ++k) out.push_back(coeffs.a(k));
  return out;
}

std::vector<double> RecoveryResult::b() const {
  std::vector<double> out;
  for (std::size_t k = 1; k < horizon; ++k) out.push_back(coeffs.b(k));
  return out;
}

double coefficient_discrepancy(const JacobiCoefficients& x, const JacobiCoefficients& y, std::size_t T) {
  double worst = 0.0;
  for (std::size_t k = 1; k < T; ++k) {
    worst = std::max(worst, std::abs(Rational(x.a_exact(k) - y.a_exact(k)).convert_to<double>()));
    worst = std::max(worst, std::abs(Rational(x.b_exact(k) - y.b_exact(k)).convert_to<double>()));
  }
  return worst;
}

}  // namespace jbc
