#include "jbc/moments.hpp"

namespace jbc {

ChebyshevTransform build_lambda(std::size_t size) {
  if (size == 0) throw InvalidArgument("Lambda size must be positive");
  ChebyshevTransform t{Matrix<BigInt>(size, size)};
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = i % 2; j <= i; j += 2) {
      const std::size_t m = (i + j) / 2;
      BigInt binom = 1;
      for (std::size_t k = 0; k < j; ++k) binom = binom * (m - k) / (k + 1);
      t.L(i, j) = ((m + j) % 2 == 0) ? binom : BigInt(-binom);
    }
  }
  return t;
}

}  // namespace jbc
