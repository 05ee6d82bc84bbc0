#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "jbc/dynamics.hpp"
#include "support.hpp"

#include <complex>
#include <random>

using namespace jbc;
using cd = std::complex<double>;

namespace {

JacobiCoefficients one_diagonal_bump(std::size_t n) {
  std::vector<double> a(n + 1, 1.0), b(n, 0.0);
  b[0] = 1.0;
  return JacobiCoefficients::finite(a, b);
}

BoundaryControl<cd> random_control(std::mt19937_64& rng, std::size_t T) {
  std::normal_distribution<double> g;
  std::vector<cd> v;
  for (std::size_t t = 0; t < T; ++t) v.emplace_back(g(rng), g(rng));
  return BoundaryControl<cd>(v);
}

}  // namespace

TEST_CASE("free system driven by an impulse") {
  const auto u = solve_semi_infinite<double>(JacobiCoefficients::free(), BoundaryControl<double>::impulse(3), 3);
  CHECK(u(1, 1) == 1.0);
  CHECK(u(2, 2) == 1.0);
  CHECK(u(1, 2) == 0.0);
  CHECK(u(1, 3) == 0.0);
  CHECK(u(3, 3) == 1.0);
}

TEST_CASE("a single diagonal bump") {
  const auto u = solve_semi_infinite<double>(one_diagonal_bump(4), BoundaryControl<double>::impulse(3), 3);
  CHECK(u(1, 1) == 1.0);
  CHECK(u(1, 2) == 1.0);
  CHECK(u(1, 3) == 1.0);
  const auto r = response_vector(one_diagonal_bump(4), 3);
  CHECK(r.values == std::vector<double>{1.0, 1.0, 1.0});
}

TEST_CASE("zero control gives a zero field") {
  std::mt19937_64 rng(11);
  const auto c = testing::random_coefficients(rng, 10);
  const auto u = solve_semi_infinite<cd>(c, BoundaryControl<cd>::zero(6), 6);
  const auto v = solve_finite<cd>(c, 4, BoundaryControl<cd>::zero(6), 6);
  for (std::size_t n = 1; n <= 6; ++n)
    for (long t = -1; t <= 6; ++t) CHECK(u(n, t) == cd(0));
  for (std::size_t n = 1; n <= 4; ++n)
    for (long t = -1; t <= 6; ++t) CHECK(v(n, t) == cd(0));
}

TEST_CASE("finite system with one site") {
  const auto c = JacobiCoefficients::finite({1.0}, {0.0});
  const auto v = solve_finite<double>(c, 1, BoundaryControl<double>::impulse(4), 4);
  CHECK(v(1, 1) == 1.0);
  CHECK(v(1, 2) == 0.0);
  CHECK(v(1, 3) == -1.0);
  CHECK(v(1, 4) == 0.0);
}

TEST_CASE("semi-infinite solution satisfies the recurrence and finite speed") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t T = 3 + trial % 9;
    const auto c = testing::random_coefficients(rng, T + 1);
    const auto f = random_control(rng, T);
    const auto u = solve_semi_infinite<cd>(c, f, T);
    for (long t = 0; t <= static_cast<long>(T); ++t) {
      CHECK(u(0, t) == detail::control_at(f, t));
      for (std::size_t n = static_cast<std::size_t>(t) + 1; n <= T; ++n) CHECK(u(n, t) == cd(0));
    }
    for (long t = 0; t < static_cast<long>(T); ++t)
      for (std::size_t n = 1; n + 1 <= T; ++n) {
        const cd rhs = c.a(n) * u(n + 1, t) + c.a(n - 1) * u(n - 1, t) + c.b(n) * u(n, t) - u(n, t - 1);
        CHECK(std::abs(u(n, t + 1) - rhs) <= 1e-12 * (1.0 + std::abs(rhs)));
      }
  }
}

TEST_CASE("finite system agrees with the semi-infinite one inside the light cone") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t N = 2 + trial;
    const auto c = testing::random_coefficients(rng, N + 2);
    const auto f = random_control(rng, N);
    const auto u = solve_semi_infinite<cd>(c, f, N);
    const auto v = solve_finite<cd>(c, N, f, N);
    for (std::size_t n = 1; n <= N; ++n)
      for (long t = static_cast<long>(n); t <= static_cast<long>(N); ++t) CHECK(u(n, t) == v(n, t));
  }
}

TEST_CASE("linearity in the control") {
  std::mt19937_64 rng(9);
  const std::size_t T = 10;
  const auto c = testing::random_coefficients(rng, T);
  const auto f = random_control(rng, T), g = random_control(rng, T);
  const cd alpha(0.3, -1.2), beta(-2.0, 0.5);
  std::vector<cd> mix;
  for (std::size_t t = 0; t < T; ++t) mix.push_back(alpha * f[t] + beta * g[t]);
  const auto uf = solve_semi_infinite<cd>(c, f, T), ug = solve_semi_infinite<cd>(c, g, T),
             um = solve_semi_infinite<cd>(c, BoundaryControl<cd>(mix), T);
  for (std::size_t n = 1; n <= T; ++n)
    for (long t = 0; t <= static_cast<long>(T); ++t) {
      const cd expect = alpha * uf(n, t) + beta * ug(n, t);
      CHECK(std::abs(um(n, t) - expect) <= 1e-11 * (1.0 + std::abs(expect)));
    }
}

TEST_CASE("response vector") {
  const auto r = response_vector(JacobiCoefficients::free(), 5);
  CHECK(r.values == std::vector<double>{1.0, 0.0, 0.0, 0.0, 0.0});

  std::mt19937_64 rng(77);
  const auto c = testing::random_coefficients(rng, 30);
  const auto rc = response_vector(c, 12);
  CHECK(rc[0] == 1.0);
  const auto u = solve_semi_infinite<double>(c, BoundaryControl<double>::impulse(12), 12);
  for (std::size_t t = 1; t <= 12; ++t) CHECK(rc[t - 1] == doctest::Approx(u(1, static_cast<long>(t))).epsilon(1e-13));
}

TEST_CASE("response of length 2N needs only the N x N block") {
  std::mt19937_64 rng(3);
  for (std::size_t N = 1; N <= 8; ++N) {
    auto full = testing::random_coefficients(rng, N);  // a_0..a_N, b_1..b_N
    auto [a, b] = full.materialize<double>(N, N);      // a_0..a_{N-1}, b_1..b_N
    const auto block = JacobiCoefficients::finite(a, b);
    CHECK_NOTHROW(response_vector(block, 2 * N));
    CHECK_THROWS_AS(response_vector(block, 2 * N + 1), CoefficientUnderrun);
    // response values agree with moment relations of the block
    const auto r = response_vector(block, 2 * N);
    const auto rf = response_vector(full, 2 * N);
    for (std::size_t k = 0; k < 2 * N; ++k) CHECK(r[k] == rf[k]);
  }
}

TEST_CASE("response operator is a convolution with the impulse response") {
  std::mt19937_64 rng(41);
  const std::size_t T = 9;
  const auto c = testing::random_coefficients(rng, T + 1);
  const auto r = response_vector(c, T);
  const auto f = random_control(rng, T);
  const auto out = apply_response(r, f, T);
  const auto u = solve_semi_infinite<cd>(c, f, T);
  for (std::size_t t = 1; t <= T; ++t)
    CHECK(std::abs(out[t - 1] - u(1, static_cast<long>(t))) <= 1e-11 * (1.0 + std::abs(out[t - 1])));
}

TEST_CASE("control operator examples") {
  const auto w = control_operator(JacobiCoefficients::free(), 3).W;
  CHECK(w == Matrix<double>::identity(3));
  const auto w2 = control_operator(one_diagonal_bump(3), 2).W;
  CHECK(w2(0, 0) == 1.0);
  CHECK(w2(0, 1) == 1.0);
  CHECK(w2(1, 0) == 0.0);
  CHECK(w2(1, 1) == 1.0);
  CHECK(control_operator(JacobiCoefficients::free(), 1).W(0, 0) == 1.0);
}

TEST_CASE("control operator against unit-control simulations") {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t T = 2 + trial;
    const auto c = testing::random_coefficients(rng, T + 1);
    const auto W = control_operator(c, T);
    // column k of W^T = W_T J_T is the state reached from control e_k
    for (std::size_t k = 0; k < T; ++k) {
      const auto u = solve_semi_infinite<double>(c, BoundaryControl<double>::impulse(T, k), T);
      for (std::size_t n = 1; n <= T; ++n)
        CHECK(W.W(n - 1, T - 1 - k) == doctest::Approx(u(n, static_cast<long>(T))).epsilon(1e-12));
    }
    double prod = 1.0, bsum = 0.0;
    for (std::size_t k = 0; k < T; ++k) {
      for (std::size_t i = k + 1; i < T; ++i) CHECK(W.W(i, k) == 0.0);
      if (k > 0) prod *= c.a(k);
      CHECK(W.W(k, k) == doctest::Approx(prod).epsilon(1e-13));
      if (k + 1 < T) {
        bsum += c.b(k + 1);
        CHECK(W.W(k, k + 1) == doctest::Approx(prod * bsum).epsilon(1e-11));
      }
    }
    const auto f = random_control(rng, T);
    const auto state = apply_control_operator(W, f);
    const auto u = solve_semi_infinite<cd>(c, f, T);
    for (std::size_t n = 1; n <= T; ++n)
      CHECK(std::abs(state[n - 1] - u(n, static_cast<long>(T))) <= 1e-11 * (1.0 + std::abs(state[n - 1])));
  }
}

TEST_CASE("exact precision control operator") {
  const auto c = JacobiCoefficients::finite_exact({Rational(1), Rational(1, 2), Rational(3)},
                                                  {Rational(1, 3), Rational(-1, 5), Rational(2)});
  const auto W = control_operator<Rational>(c, 3).W;
  CHECK(W(1, 1) == Rational(1, 2));
  CHECK(W(2, 2) == Rational(3, 2));
  CHECK(W(0, 1) == Rational(1, 3));
  CHECK(W(1, 2) == Rational(1, 2) * (Rational(1, 3) - Rational(1, 5)));
}

TEST_CASE("coefficient underrun is reported") {
  const auto c = JacobiCoefficients::finite({1.0, 1.0}, {0.0});
  CHECK_THROWS_AS(solve_semi_infinite<double>(c, BoundaryControl<double>::impulse(5), 5), CoefficientUnderrun);
  CHECK_THROWS_AS(solve_finite<double>(c, 3, BoundaryControl<double>::impulse(2), 2), CoefficientUnderrun);
  CHECK_THROWS_AS(solve_semi_infinite<double>(c, BoundaryControl<double>::impulse(1), 0), InvalidArgument);
}

TEST_CASE("batch output does not depend on the thread count") {
  std::mt19937_64 rng(8);
  const std::size_t T = 16;
  const auto c = testing::random_coefficients(rng, T + 1);
  std::vector<BoundaryControl<cd>> controls;
  for (int k = 0; k < 12; ++k) controls.push_back(random_control(rng, T));
  const auto one = solve_semi_infinite_batch<cd>(c, controls, T, 1);
  const auto four = solve_semi_infinite_batch<cd>(c, controls, T, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i)
    for (std::size_t n = 1; n <= T; ++n)
      for (long t = 0; t <= static_cast<long>(T); ++t) CHECK(one[i](n, t) == four[i](n, t));
}
