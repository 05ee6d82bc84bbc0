#include "jbc/core.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <mutex>
#include <sstream>

namespace jbc {

// ---------------------------------------------------------------------------
// precision helpers

std::string_view to_string(PrecisionMode mode) {
  switch (mode) {
    case PrecisionMode::Double: return "double";
    case PrecisionMode::Extended: return "extended";
    case PrecisionMode::Rational: return "rational";
  }
  return "double";
}

PrecisionMode parse_precision(std::string_view text) {
  std::string s(text);
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  if (s == "double") return PrecisionMode::Double;
  if (s == "extended") return PrecisionMode::Extended;
  if (s == "rational") return PrecisionMode::Rational;
  throw InvalidArgument("unknown precision mode '" + std::string(text) + "'");
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InvalidArgument("cannot convert a non-finite value to a rational");
  if (x == 0.0) return Rational(0);
  int exponent = 0;
  const double mantissa = std::frexp(x, &exponent);
  // 53-bit integer mantissa
  const auto scaled = static_cast<long long>(std::ldexp(mantissa, 53));
  exponent -= 53;
  BigInt num(scaled);
  BigInt den(1);
  if (exponent >= 0) {
    num <<= exponent;
  } else {
    den <<= -exponent;
  }
  return Rational(num) / Rational(den);
}

Rational rational_from_extended(const Extended& x) {
  if (!boost::multiprecision::isfinite(x)) throw InvalidArgument("cannot convert a non-finite value to a rational");
  if (x == 0) return Rational(0);
  int exponent = 0;
  const Extended mantissa = boost::multiprecision::frexp(x, &exponent);
  constexpr int bits = 256;  // more than the Extended mantissa
  const BigInt num = boost::multiprecision::ldexp(mantissa, bits).convert_to<BigInt>();
  exponent -= bits;
  if (exponent >= 0) return Rational(BigInt(num << exponent));
  return Rational(num) / Rational(BigInt(BigInt(1) << -exponent));
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    const Rational num = parse_rational(s.substr(0, slash));
    const Rational den = parse_rational(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return num / den;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  BigInt digits = 0;
  long long scale = 0;
  bool seen_digit = false, seen_point = false;
  for (; pos < s.size(); ++pos) {
    const char c = s[pos];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits = digits * 10 + (c - '0');
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw ParseError("malformed rational literal '" + s + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw ParseError("malformed rational literal '" + s + "'");
    try {
      std::size_t used = 0;
      scale += std::stoll(s.substr(pos + 1), &used);
      if (pos + 1 + used != s.size()) throw ParseError("malformed exponent in '" + s + "'");
    } catch (const std::logic_error&) {
      throw ParseError("malformed exponent in '" + s + "'");
    }
  }
  Rational q(digits);
  BigInt p10 = 1;
  for (long long i = 0; i < std::llabs(scale); ++i) p10 *= 10;
  q = scale >= 0 ? q * Rational(p10) : q / Rational(p10);
  return negative ? Rational(-q) : q;
}

std::string to_exact_string(const Rational& q) {
  std::ostringstream os;
  os << mp::numerator(q);
  if (mp::denominator(q) != 1) os << '/' << mp::denominator(q);
  return os.str();
}

// ---------------------------------------------------------------------------
// JacobiCoefficients

struct JacobiCoefficients::Impl {
  // finite storage
  std::vector<double> a, b;
  std::vector<Rational> a_q, b_q;
  bool exact = false;

  // generator storage
  std::optional<GeneratorSpec> spec;
  std::function<double(std::size_t)> a_rule, b_rule;
  std::function<Rational(std::size_t)> a_rule_q, b_rule_q;

  mutable std::mutex mutex;
  mutable std::vector<double> a_cache, b_cache;  // b_cache[n-1] = b_n
  mutable std::vector<Rational> a_cache_q, b_cache_q;

  bool generated() const { return spec.has_value(); }
};

JacobiCoefficients::JacobiCoefficients(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

JacobiCoefficients JacobiCoefficients::finite(std::vector<double> a, std::vector<double> b) {
  auto impl = std::make_shared<Impl>();
  impl->a = std::move(a);
  impl->b = std::move(b);
  for (double x : impl->a) impl->a_q.push_back(std::isfinite(x) ? rational_from_double(x) : Rational(0));
  for (double x : impl->b) impl->b_q.push_back(std::isfinite(x) ? rational_from_double(x) : Rational(0));
  return JacobiCoefficients(std::move(impl));
}

JacobiCoefficients JacobiCoefficients::finite_exact(std::vector<Rational> a, std::vector<Rational> b) {
  auto impl = std::make_shared<Impl>();
  impl->a_q = std::move(a);
  impl->b_q = std::move(b);
  for (const auto& q : impl->a_q) impl->a.push_back(q.convert_to<double>());
  for (const auto& q : impl->b_q) impl->b.push_back(q.convert_to<double>());
  impl->exact = true;
  return JacobiCoefficients(std::move(impl));
}

JacobiCoefficients JacobiCoefficients::free() {
  auto impl = std::make_shared<Impl>();
  impl->spec = GeneratorSpec{"free", {}};
  impl->a_rule = [](std::size_t) { return 1.0; };
  impl->b_rule = [](std::size_t) { return 0.0; };
  impl->a_rule_q = [](std::size_t) { return Rational(1); };
  impl->b_rule_q = [](std::size_t) { return Rational(0); };
  return JacobiCoefficients(std::move(impl));
}

JacobiCoefficients JacobiCoefficients::geometric(double ratio, double diagonal) {
  if (!(ratio > 0.0) || !std::isfinite(ratio))
    throw InvalidArgument("geometric coefficients need a positive finite ratio");
  auto impl = std::make_shared<Impl>();
  impl->spec = GeneratorSpec{"geometric", {{"ratio", ratio}, {"diagonal", diagonal}}};
  impl->a_rule = [ratio](std::size_t n) { return std::pow(ratio, static_cast<double>(n)); };
  impl->b_rule = [diagonal](std::size_t) { return diagonal; };
  const Rational rq = rational_from_double(ratio);
  const Rational dq = rational_from_double(diagonal);
  impl->a_rule_q = [rq](std::size_t n) {
    Rational out(1), base(rq);
    for (std::size_t e = n; e > 0; e >>= 1) {
      if (e & 1U) out *= base;
      if (e > 1) base *= base;
    }
    return out;
  };
  impl->b_rule_q = [dq](std::size_t) { return dq; };
  return JacobiCoefficients(std::move(impl));
}

JacobiCoefficients JacobiCoefficients::generated(std::function<double(std::size_t)> a_rule,
                                                 std::function<double(std::size_t)> b_rule,
                                                 std::string kind) {
  auto impl = std::make_shared<Impl>();
  impl->spec = GeneratorSpec{std::move(kind), {}};
  impl->a_rule = a_rule;
  impl->b_rule = b_rule;
  impl->a_rule_q = [a_rule](std::size_t n) { return rational_from_double(a_rule(n)); };
  impl->b_rule_q = [b_rule](std::size_t n) { return rational_from_double(b_rule(n)); };
  return JacobiCoefficients(std::move(impl));
}

namespace {

template <class T, class Rule>
const T& memo(std::vector<T>& cache, std::size_t index, std::size_t offset, const Rule& rule) {
  while (cache.size() <= index) cache.push_back(rule(cache.size() + offset));
  return cache[index];
}

}  // namespace

double JacobiCoefficients::a(std::size_t n) const {
  const Impl& d = *impl_;
  if (d.generated()) {
    std::lock_guard lock(d.mutex);
    return memo(d.a_cache, n, 0, d.a_rule);
  }
  if (n >= d.a.size())
    throw CoefficientUnderrun("a_" + std::to_string(n) + " requested, " + std::to_string(d.a.size()) +
                              " off-diagonal entries available");
  return d.a[n];
}

double JacobiCoefficients::b(std::size_t n) const {
  if (n == 0) throw InvalidArgument("diagonal entries are indexed from 1");
  const Impl& d = *impl_;
  if (d.generated()) {
    std::lock_guard lock(d.mutex);
    return memo(d.b_cache, n - 1, 1, d.b_rule);
  }
  if (n > d.b.size())
    throw CoefficientUnderrun("b_" + std::to_string(n) + " requested, " + std::to_string(d.b.size()) +
                              " diagonal entries available");
  return d.b[n - 1];
}

Rational JacobiCoefficients::a_exact(std::size_t n) const {
  const Impl& d = *impl_;
  if (d.generated()) {
    std::lock_guard lock(d.mutex);
    return memo(d.a_cache_q, n, 0, d.a_rule_q);
  }
  if (n >= d.a_q.size())
    throw CoefficientUnderrun("a_" + std::to_string(n) + " requested, " + std::to_string(d.a_q.size()) +
                              " off-diagonal entries available");
  return d.a_q[n];
}

Rational JacobiCoefficients::b_exact(std::size_t n) const {
  if (n == 0) throw InvalidArgument("diagonal entries are indexed from 1");
  const Impl& d = *impl_;
  if (d.generated()) {
    std::lock_guard lock(d.mutex);
    return memo(d.b_cache_q, n - 1, 1, d.b_rule_q);
  }
  if (n > d.b_q.size())
    throw CoefficientUnderrun("b_" + std::to_string(n) + " requested, " + std::to_string(d.b_q.size()) +
                              " diagonal entries available");
  return d.b_q[n - 1];
}

bool JacobiCoefficients::generator_backed() const noexcept { return impl_->generated(); }

std::optional<std::size_t> JacobiCoefficients::a_count() const noexcept {
  if (impl_->generated()) return std::nullopt;
  return impl_->a.size();
}

std::optional<std::size_t> JacobiCoefficients::b_count() const noexcept {
  if (impl_->generated()) return std::nullopt;
  return impl_->b.size();
}

std::optional<std::size_t> JacobiCoefficients::max_order() const noexcept {
  if (impl_->generated()) return std::nullopt;
  // A^N needs b_1..b_N and a_1..a_{N-1}
  return std::min(impl_->b.size(), impl_->a.size());
}

const std::optional<GeneratorSpec>& JacobiCoefficients::generator() const noexcept { return impl_->spec; }

bool JacobiCoefficients::exact_input() const noexcept { return impl_->exact; }

ValidationReport validate_coefficients(const JacobiCoefficients& coeffs, std::size_t inspect) {
  ValidationReport report;
  const std::size_t na = coeffs.a_count().value_or(inspect);
  const std::size_t nb = coeffs.b_count().value_or(inspect);
  report.inspected = std::max(na, nb);
  auto fail = [&](std::string msg) {
    report.valid = false;
    report.issues.push_back(std::move(msg));
  };
  if (na == 0) {
    fail("missing a_0");
  } else if (coeffs.a(0) != 1.0) {
    fail("a_0 convention violated: a_0 = " + std::to_string(coeffs.a(0)) + ", expected 1");
  }
  for (std::size_t n = 0; n < na; ++n) {
    const double v = coeffs.a(n);
    if (!std::isfinite(v)) {
      fail("non-finite off-diagonal a_" + std::to_string(n));
    } else if (v < 0.0) {
      fail("negative off-diagonal a_" + std::to_string(n));
    } else if (v == 0.0) {
      fail("zero off-diagonal a_" + std::to_string(n));
    }
  }
  for (std::size_t n = 1; n <= nb; ++n)
    if (!std::isfinite(coeffs.b(n))) fail("non-finite diagonal b_" + std::to_string(n));
  return report;
}

// ---------------------------------------------------------------------------
// SpectralData

SpectralData::SpectralData(std::vector<SpectralPair> pairs) : pairs_(std::move(pairs)) {
  if (pairs_.empty()) throw InvalidArgument("spectral data must be non-empty");
  std::sort(pairs_.begin(), pairs_.end(),
            [](const SpectralPair& x, const SpectralPair& y) { return x.lambda < y.lambda; });
  for (std::size_t k = 0; k < pairs_.size(); ++k) {
    if (!(pairs_[k].weight > 0.0) || !std::isfinite(pairs_[k].weight))
      throw InvalidArgument("spectral weights must be positive");
    if (!std::isfinite(pairs_[k].lambda)) throw InvalidArgument("spectral nodes must be finite");
    if (k > 0 && pairs_[k].lambda == pairs_[k - 1].lambda)
      throw InvalidArgument("spectral nodes must be distinct");
  }
}

double SpectralData::total_weight() const {
  double s = 0.0;
  for (const auto& p : pairs_) s += p.weight;
  return s;
}

}  // namespace jbc
