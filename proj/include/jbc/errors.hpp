#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>

namespace jbc {

/// Base of every library error. `code()` is a stable machine-readable tag.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message, bool validation)
      : std::runtime_error(message), code_(std::move(code)), validation_(validation) {}

  const std::string& code() const noexcept { return code_; }
  /// True when the failure is attributable to the input data rather than the library.
  bool is_validation() const noexcept { return validation_; }

 private:
  std::string code_;
  bool validation_;
};

class CoefficientUnderrun : public Error {
 public:
  explicit CoefficientUnderrun(const std::string& what)
      : Error("coefficient_underrun", "coefficient underrun: " + what, true) {}
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what, true) {}
};

/// A matrix required to be positive definite is not.
class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& what, std::size_t index)
      : Error("not_positive_definite", what + " (pivot " + std::to_string(index) + ")", true),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// Cholesky pivots lost too many digits for the working precision.
class ConditioningError : public Error {
 public:
  ConditioningError(const std::string& what, std::size_t index)
      : Error("ill_conditioned", what + " (pivot " + std::to_string(index) + ")", true),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

class SeriesDivergence : public Error {
 public:
  explicit SeriesDivergence(const std::string& what) : Error("series_divergence", what, true) {}
};

class EigensolverFailure : public Error {
 public:
  explicit EigensolverFailure(const std::string& what) : Error("eigensolver_failure", what, false) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("parse_error", what, true) {}
};

}  // namespace jbc
