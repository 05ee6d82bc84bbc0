#include "jbc/connecting.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace jbc {

std::string_view to_string(Orientation o) {
  return o == Orientation::CornerTop ? "corner_top" : "corner_bottom";
}

Orientation parse_orientation(std::string_view text) {
  std::string t(text);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::tolower(c); });
  if (t == "corner_top" || t == "top") return Orientation::CornerTop;
  if (t == "corner_bottom" || t == "bottom") return Orientation::CornerBottom;
  throw ParseError("unknown orientation '" + std::string(text) + "'");
}

ConnectingMatrix<double> connecting_from_spectrum(const SpectralData& data, std::size_t T) {
  if (T == 0) throw InvalidArgument("horizon T must be at least 1");
  if (T > data.size())
    throw InvalidArgument("connecting_from_spectrum needs T <= N (T = " + std::to_string(T) +
                          ", N = " + std::to_string(data.size()) + ")");
  ConnectingMatrix<double> out{Matrix<double>(T, T), Orientation::CornerBottom};
  for (const auto& [lambda, weight] : data.pairs()) {
    const auto cheb = chebyshev_values(T, lambda);
    for (std::size_t l = 0; l < T; ++l)
      for (std::size_t m = 0; m < T; ++m) out.C(l, m) += weight * cheb[T - l] * cheb[T - m];
  }
  return out;
}

}  // namespace jbc
