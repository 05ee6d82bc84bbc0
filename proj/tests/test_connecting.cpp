#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jbc/connecting.hpp"
#include "support.hpp"

#include <random>

using namespace jbc;

namespace {

Matrix<double> mat2(double a, double b, double c, double d) {
  Matrix<double> m(2, 2);
  m(0, 0) = a;
  m(0, 1) = b;
  m(1, 0) = c;
  m(1, 1) = d;
  return m;
}

JacobiCoefficients one_diagonal_bump(std::size_t n) {
  std::vector<double> a(n + 1, 1.0), b(n, 0.0);
  b[0] = 1.0;
  return JacobiCoefficients::finite(a, b);
}

}  // namespace

TEST_CASE("orientation names") {
  CHECK(to_string(Orientation::CornerTop) == "corner_top");
  CHECK(parse_orientation("corner_bottom") == Orientation::CornerBottom);
  CHECK_THROWS_AS(parse_orientation("sideways"), Error);
}

TEST_CASE("connecting matrix from the response") {
  const auto id = connecting_from_response(ResponseVector<double>{{1, 0, 0}}, 2);
  CHECK(id.orientation == Orientation::CornerBottom);
  CHECK(id.C == Matrix<double>::identity(2));
  CHECK(connecting_from_response(ResponseVector<double>{{1, 1, 1}}, 2).C == mat2(2, 1, 1, 1));
  CHECK(connecting_from_response(ResponseVector<double>{{0.25}}, 1).C(0, 0) == 0.25);
  CHECK_THROWS_AS(connecting_from_response(ResponseVector<double>{{1, 0}}, 2), InvalidArgument);
}

TEST_CASE("connecting matrix from spectral data") {
  CHECK(max_abs_diff(connecting_from_spectrum(spectral_data(JacobiCoefficients::free(), 6), 6).C,
                     Matrix<double>::identity(6)) < 1e-12);
  CHECK(connecting_from_spectrum(spectral_data(JacobiCoefficients::free(), 1), 1).C(0, 0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(connecting_from_spectrum(spectral_data(JacobiCoefficients::free(), 3), 4), InvalidArgument);

  std::mt19937_64 rng(88);
  const auto c = testing::random_coefficients(rng, 9);
  const auto dyn = connecting_from_response(response_vector(c, 15), 8);
  const auto spec = connecting_from_spectrum(spectral_data(c, 8), 8);
  CHECK(spec.orientation == Orientation::CornerBottom);
  CHECK(max_abs_diff(dyn.C, spec.C) < 1e-10);
}

TEST_CASE("Gram matrix of the control operator") {
  CHECK(gram_from_control(JacobiCoefficients::free(), 5).C == Matrix<double>::identity(5));
  const auto g = gram_from_control(one_diagonal_bump(3), 2);
  CHECK(g.orientation == Orientation::CornerTop);
  CHECK(g.C == mat2(1, 1, 1, 2));
  CHECK(gram_from_control(one_diagonal_bump(3), 1).C(0, 0) == 1.0);
}

TEST_CASE("connecting matrix from the Hankel matrix") {
  CHECK(connecting_from_hankel(build_hankel(MomentSequence<double>{{1, 0, 1}}, 2)).C == Matrix<double>::identity(2));
  CHECK(connecting_from_hankel(build_hankel(MomentSequence<double>{{1, 1, 2}}, 2)).C == mat2(1, 1, 1, 2));
  const auto s = semicircle_moments<Rational>(5);
  const auto c3 = connecting_from_hankel(build_hankel(s, 3));
  CHECK(c3.orientation == Orientation::CornerTop);
  CHECK(c3.C == Matrix<Rational>::identity(3));
}

TEST_CASE("four constructions agree") {
  std::mt19937_64 rng(2718);
  for (std::size_t T = 1; T <= 16; ++T) {
    const auto c = testing::bounded_coefficients(rng, T + 1);
    const auto r = response_vector(c, 2 * T - 1);
    const auto dyn = connecting_from_response(r, T).oriented(Orientation::CornerTop);
    const auto spec = connecting_from_spectrum(spectral_data(c, T), T).oriented(Orientation::CornerTop);
    const auto gram = gram_from_control(c, T);
    const auto oracle = testing::gram_by_unit_controls(c, T);  // C^T
    CHECK(max_abs_diff(dyn.C, gram.C) < 1e-9);
    CHECK(max_abs_diff(spec.C, gram.C) < 1e-9);
    CHECK(max_abs_diff(exchange_flip(oracle), gram.C) < 1e-9);

    // the Hankel route in exact arithmetic on the exact double inputs
    const auto s = moments_from_coefficients<Rational>(c, 2 * T - 1);
    const auto hank = connecting_from_hankel(build_hankel(s, T));
    CHECK(max_abs_diff(to_double_matrix(hank.C), gram.C) < 1e-9);
    if (T <= 8) {
      const auto hd = connecting_from_hankel(build_hankel(moments_from_coefficients<double>(c, 2 * T - 1), T));
      CHECK(max_abs_diff(hd.C, gram.C) < 1e-9);
    }
  }
}

TEST_CASE("exact agreement in rational arithmetic") {
  const auto c = JacobiCoefficients::finite_exact(
      {Rational(1), Rational(3, 2), Rational(1, 3), Rational(2), Rational(5, 7), Rational(1)},
      {Rational(-1, 2), Rational(1, 4), Rational(0), Rational(3), Rational(-2, 3)});
  for (std::size_t T = 1; T <= 5; ++T) {
    const auto gram = gram_from_control<Rational>(c, T);
    const auto dyn = connecting_from_response(response_vector<Rational>(c, 2 * T - 1), T);
    const auto hank = connecting_from_hankel(build_hankel(moments_from_coefficients<Rational>(c, 2 * T - 1), T));
    CHECK(dyn.flipped().C == gram.C);
    CHECK(hank.C == gram.C);
  }
}

TEST_CASE("corner-top entries sum toward the upper-left") {
  // {C_T}_{ij} = sum_{k=0}^{min(i,j)-1} r_{|i-j|+2k}
  std::mt19937_64 rng(5);
  const std::size_t T = 7;
  const auto c = testing::random_coefficients(rng, T + 1);
  const auto r = response_vector(c, 2 * T - 1);
  const auto top = connecting_from_response(r, T).flipped();
  for (std::size_t i = 1; i <= T; ++i)
    for (std::size_t j = 1; j <= T; ++j) {
      double acc = 0.0;
      const std::size_t d = i > j ? i - j : j - i;
      for (std::size_t k = 0; k < std::min(i, j); ++k) acc += r[d + 2 * k];
      CHECK(top.C(i - 1, j - 1) == doctest::Approx(acc));
    }
}

TEST_CASE("orientation flip is an involution") {
  std::mt19937_64 rng(3);
  const auto c = testing::random_coefficients(rng, 10);
  const auto m = connecting_from_response(response_vector(c, 19), 10);
  const auto twice = m.flipped().flipped();
  CHECK(twice.orientation == m.orientation);
  CHECK(twice.C == m.C);
  CHECK(m.oriented(Orientation::CornerBottom).C == m.C);
}

TEST_CASE("response validation") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = testing::bounded_coefficients(rng, 8);
    const auto v = validate_response(response_vector(c, 13), 7);
    CHECK(v.valid);
    CHECK(v.min_eigenvalue > 0.0);
  }
  const auto bad = validate_response(ResponseVector<double>{{1, 2, 0}}, 2);
  CHECK_FALSE(bad.valid);
  CHECK(bad.min_eigenvalue == doctest::Approx(-1.0));
  REQUIRE(bad.failed_pivot.has_value());
  CHECK(*bad.failed_pivot == 1);
  CHECK(validate_response(ResponseVector<double>{{1}}, 1).valid);

  const auto exact = validate_response(ResponseVector<Rational>{{Rational(1), Rational(2), Rational(0)}}, 2);
  CHECK_FALSE(exact.valid);
}

TEST_CASE("Cholesky factor of the corner-top matrix is the control operator") {
  std::mt19937_64 rng(64);
  for (std::size_t T = 2; T <= 10; ++T) {
    const auto c = testing::bounded_coefficients(rng, T + 1);
    const auto gram = gram_from_control(c, T);
    const auto f = cholesky_upper(gram.C);
    REQUIRE(f.ok());
    CHECK(max_abs_diff(f.upper, control_operator(c, T).W) < 1e-10);
  }
}
