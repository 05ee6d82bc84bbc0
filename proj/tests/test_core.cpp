#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jbc/core.hpp"
#include "jbc/dense.hpp"

#include <cmath>
#include <limits>
#include <thread>

using namespace jbc;

TEST_CASE("finite coefficients follow the index convention") {
  const auto c = JacobiCoefficients::finite({1.0, 2.0, 3.0}, {0.5, -0.5, 0.25});
  CHECK(c.a(0) == 1.0);
  CHECK(c.a(2) == 3.0);
  CHECK(c.b(1) == 0.5);
  CHECK(c.b(3) == 0.25);
  CHECK(c.max_order() == 3);
  CHECK_FALSE(c.generator_backed());
  CHECK_THROWS_AS(c.a(3), CoefficientUnderrun);
  CHECK_THROWS_AS(c.b(4), CoefficientUnderrun);
  CHECK_THROWS_AS(c.b(0), InvalidArgument);
}

TEST_CASE("exact entries of finite double input are the doubles themselves") {
  const auto c = JacobiCoefficients::finite({1.0, 0.1}, {0.3});
  CHECK(c.a_exact(1) != Rational(1, 10));
  CHECK(c.a_exact(1).convert_to<double>() == 0.1);
  CHECK(c.a_as<Extended>(1) == Extended(0.1));
}

TEST_CASE("free and geometric generators") {
  const auto f = JacobiCoefficients::free();
  CHECK(f.generator_backed());
  CHECK(f.a(0) == 1.0);
  CHECK(f.a(500) == 1.0);
  CHECK(f.b(500) == 0.0);
  CHECK_FALSE(f.max_order().has_value());

  const auto g = JacobiCoefficients::geometric(2.0, 0.5);
  CHECK(g.a(0) == 1.0);
  CHECK(g.a(10) == 1024.0);
  CHECK(g.b(3) == 0.5);
  CHECK(g.a_exact(70) == Rational(BigInt(1) << 70));
  REQUIRE(g.generator());
  CHECK(g.generator()->kind == "geometric");
}

TEST_CASE("generated entries are memoized and thread safe") {
  const auto g = JacobiCoefficients::generated([](std::size_t n) { return 1.0 + 0.5 * static_cast<double>(n % 3); },
                                              [](std::size_t n) { return std::sin(static_cast<double>(n)); });
  std::vector<double> seen(8, 0.0);
  {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < seen.size(); ++w)
      pool.emplace_back([&, w] {
        double acc = 0.0;
        for (std::size_t n = 1; n < 400; ++n) acc += g.a(n) * g.b(n);
        seen[w] = acc;
      });
  }
  for (double s : seen) CHECK(s == seen.front());
}

TEST_CASE("validation flags bad coefficients") {
  CHECK(validate_coefficients(JacobiCoefficients::finite({1.0, 2.0}, {0.0, 1.0})).valid);
  CHECK_FALSE(validate_coefficients(JacobiCoefficients::finite({2.0, 1.0}, {0.0})).valid);
  CHECK_FALSE(validate_coefficients(JacobiCoefficients::finite({1.0, -1.0}, {0.0})).valid);
  CHECK_FALSE(validate_coefficients(JacobiCoefficients::finite({1.0, 0.0}, {0.0})).valid);
  CHECK_FALSE(
      validate_coefficients(JacobiCoefficients::finite({1.0, std::numeric_limits<double>::quiet_NaN()}, {0.0})).valid);
  const auto rep = validate_coefficients(JacobiCoefficients::free(), 16);
  CHECK(rep.valid);
  CHECK(rep.inspected >= 16);
}

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("1/3") == Rational(1, 3));
  CHECK(parse_rational("0.1") == Rational(1, 10));
  CHECK(parse_rational("-2.5e-3") == Rational(-1, 400));
  CHECK(parse_rational("42") == Rational(42));
  CHECK(parse_rational("1.5E2") == Rational(150));
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/0"), Error);
  CHECK(to_exact_string(Rational(-3, 4)) == "-3/4");
  CHECK(to_exact_string(Rational(5)) == "5");
}

TEST_CASE("exact conversions from binary floating values") {
  CHECK(rational_from_double(0.75) == Rational(3, 4));
  CHECK(rational_from_double(-1024.0) == Rational(-1024));
  CHECK(rational_from_double(0.1).convert_to<double>() == 0.1);
  const Extended x = Extended(1) / 3;
  CHECK(from_rational<Extended>(rational_from_extended(x)) == x);
  CHECK(rational_from_extended(Extended(0)) == Rational(0));
}

TEST_CASE("precision names") {
  CHECK(parse_precision("Extended") == PrecisionMode::Extended);
  CHECK(parse_precision("rational") == PrecisionMode::Rational);
  CHECK(to_string(PrecisionMode::Double) == "double");
  CHECK_THROWS_AS(parse_precision("quad"), Error);
}

TEST_CASE("boundary controls") {
  CHECK_THROWS_AS(BoundaryControl<double>(std::vector<double>{}), InvalidArgument);
  const auto f = BoundaryControl<double>::impulse(4, 2);
  CHECK(f.horizon() == 4);
  CHECK(f[2] == 1.0);
  CHECK(f[0] == 0.0);
  CHECK_THROWS_AS(BoundaryControl<double>::impulse(3, 3), InvalidArgument);
}

TEST_CASE("spectral data validation") {
  CHECK_NOTHROW(SpectralData({{-1.0, 0.5}, {1.0, 0.5}}));
  CHECK_THROWS_AS(SpectralData({{1.0, 0.5}, {1.0, 0.5}}), InvalidArgument);
  CHECK_THROWS_AS(SpectralData({{0.0, -0.1}}), InvalidArgument);
  const SpectralData d({{1.0, 0.25}, {-1.0, 0.75}});
  CHECK(d[0].lambda == -1.0);  // sorted on construction
  CHECK(d.total_weight() == doctest::Approx(1.0));
}

TEST_CASE("materialized block is symmetric tridiagonal") {
  const auto c = JacobiCoefficients::finite({1.0, 2.0, 3.0}, {4.0, 5.0, 6.0});
  const auto m = materialize_matrix(c, 3);
  CHECK(is_symmetric(m));
  CHECK(m(0, 0) == 4.0);
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 2) == 3.0);
  CHECK(m(0, 2) == 0.0);
  CHECK_THROWS_AS(materialize_matrix(c, 4), CoefficientUnderrun);
}

TEST_CASE("dense factorizations") {
  Matrix<double> a(2, 2);
  a(0, 0) = 4.0;
  a(0, 1) = a(1, 0) = 2.0;
  a(1, 1) = 3.0;
  const auto f = cholesky_upper(a);
  REQUIRE(f.ok());
  CHECK(f.upper(0, 0) == doctest::Approx(2.0));
  CHECK(f.upper(0, 1) == doctest::Approx(1.0));
  CHECK(f.upper(1, 1) == doctest::Approx(std::sqrt(2.0)));
  CHECK(max_abs_diff(f.upper.transpose() * f.upper, a) < 1e-14);

  Matrix<double> bad(2, 2);
  bad(0, 0) = bad(1, 1) = 1.0;
  bad(0, 1) = bad(1, 0) = 2.0;
  CHECK(cholesky_upper(bad).failed_at == 1);

  Matrix<Rational> q(2, 2);
  q(0, 0) = Rational(1);
  q(0, 1) = q(1, 0) = Rational(1, 2);
  q(1, 1) = Rational(1, 3);
  const auto l = ldlt(q);
  REQUIRE(l.ok());
  CHECK(l.pivots[1] == Rational(1, 12));
  CHECK(l.unit_upper(0, 1) == Rational(1, 2));

  const auto x = cholesky_solve(f, std::vector<double>{6.0, 5.0});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(1.0));
}

TEST_CASE("eigenvalues agree across backends on a 2x2 closed form") {
  // [[1,1],[1,2]]: (3 +- sqrt 5)/2
  Matrix<double> a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = a(1, 0) = 1.0;
  a(1, 1) = 2.0;
  const double lo = (3.0 - std::sqrt(5.0)) / 2.0, hi = (3.0 + std::sqrt(5.0)) / 2.0;
  const auto e1 = symmetric_eigenvalues(a);
  CHECK(e1[0] == doctest::Approx(lo).epsilon(1e-14));
  CHECK(e1[1] == doctest::Approx(hi).epsilon(1e-14));
  const auto e2 = eigenvalues_of(a.map<Extended>([](double v) { return Extended(v); }));
  CHECK(e2[0] == doctest::Approx(lo).epsilon(1e-15));
  const auto e3 = eigenvalues_of(a.map<Rational>([](double v) { return rational_from_double(v); }));
  CHECK(e3[1] == doctest::Approx(hi).epsilon(1e-15));
  CHECK(largest_singular_value(a) == doctest::Approx(hi));
}

TEST_CASE("exchange flip is an involution") {
  Matrix<double> m(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = static_cast<double>(3 * i + j);
  CHECK(exchange_flip(exchange_flip(m)) == m);
  CHECK(exchange_flip(m)(0, 0) == m(2, 2));
}
