#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace qtrig {

/// Base class for every numerical failure the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An interval whose kernel denominators d(a,b;q^i) vanish, or that is
/// otherwise unusable (a >= b, arc too long for barycentric coordinates).
class InvalidIntervalError : public Error {
 public:
  explicit InvalidIntervalError(const std::string& what,
                                std::optional<int> failing_index = std::nullopt)
      : Error(what), failing_index_(failing_index) {}

  std::optional<int> failing_index() const noexcept { return failing_index_; }

 private:
  std::optional<int> failing_index_;
};

/// The weighted basis sum of a rational curve vanishes at `x`.
class SingularDenominatorError : public Error {
 public:
  SingularDenominatorError(const std::string& what, double x, double denominator)
      : Error(what), x_(x), denominator_(denominator) {}

  double x() const noexcept { return x_; }
  double denominator() const noexcept { return denominator_; }

 private:
  double x_;
  double denominator_;
};

class DimensionMismatchError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive minor enumeration refused because it would exceed the cap.
class SizeCapExceededError : public Error {
 public:
  SizeCapExceededError(const std::string& what, std::uint64_t count)
      : Error(what), count_(count) {}

  std::uint64_t count() const noexcept { return count_; }

 private:
  std::uint64_t count_;
};

class InsufficientSamplesError : public Error {
 public:
  using Error::Error;
};

/// Least-squares normal matrix too ill-conditioned to trust.
class IllConditionedError : public Error {
 public:
  IllConditionedError(const std::string& what, double condition)
      : Error(what), condition_(condition) {}

  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

}  // namespace qtrig
