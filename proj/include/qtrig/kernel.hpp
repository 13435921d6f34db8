#pragma once

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrig/errors.hpp"
#include "qtrig/qcalculus.hpp"

namespace qtrig {

/// |d(a,b;q^i)| at or below this is treated as a vanishing denominator.
inline constexpr double kSingularThreshold = 1e-12;

/// Absolute tolerance when matching interval endpoints to the k*pi/2 grid.
inline constexpr double kQuarterPeriodTolerance = 1e-12;

/// d(x,y;q) = (q+1)/2 sin(y-x) + (q-1)/2 sin(y+x). Reduces to sin(y-x) at q = 1.
template <typename Scalar>
Scalar d_kernel(Scalar x, Scalar y, Scalar q) {
  using std::sin;
  return (q + Scalar(1)) / Scalar(2) * sin(y - x) + (q - Scalar(1)) / Scalar(2) * sin(y + x);
}

/// Parameter domain [a, b] in radians.
template <typename Scalar>
class Interval {
 public:
  Interval(Scalar a, Scalar b) : a_(a), b_(b) {
    using std::isfinite;
    if (!isfinite(a) || !isfinite(b) || !(a < b)) {
      throw InvalidIntervalError("interval requires finite endpoints with a < b");
    }
    using std::abs;
    using std::round;
    const Scalar half_pi = std::numbers::pi_v<Scalar> / Scalar(2);
    const Scalar k = round(a / half_pi);
    if (abs(a - k * half_pi) <= Scalar(kQuarterPeriodTolerance) &&
        abs(b - (k + Scalar(1)) * half_pi) <= Scalar(kQuarterPeriodTolerance)) {
      quarter_index_ = static_cast<long>(k);
    }
  }

  Scalar a() const noexcept { return a_; }
  Scalar b() const noexcept { return b_; }
  Scalar length() const noexcept { return b_ - a_; }

  /// True iff [a, b] = [k pi/2, (k+1) pi/2] for some integer k.
  bool quarter_period() const noexcept { return quarter_index_.has_value(); }

  /// The k of a quarter-period interval.
  std::optional<long> quarter_index() const noexcept { return quarter_index_; }

  bool contains(Scalar x) const noexcept { return a_ <= x && x <= b_; }

  /// `count` uniformly spaced parameters including both endpoints.
  std::vector<Scalar> uniform_grid(int count) const {
    if (count < 2) throw std::invalid_argument("uniform grid needs at least 2 points");
    std::vector<Scalar> xs(static_cast<std::size_t>(count));
    for (int j = 0; j < count; ++j) {
      xs[j] = a_ + (b_ - a_) * Scalar(j) / Scalar(count - 1);
    }
    xs.back() = b_;
    return xs;
  }

 private:
  Scalar a_;
  Scalar b_;
  std::optional<long> quarter_index_;
};

template <typename Scalar>
Interval(Scalar, Scalar) -> Interval<Scalar>;

template <typename Scalar>
struct ValidityCertificate {
  int degree = 0;
  Scalar min_abs_denominator{};
  bool valid = false;
  std::optional<int> failing_index;
  /// d(a,b;q^i) for i = 0..n.
  std::vector<Scalar> denominators;
};

/// Checks |d(a,b;q^i)| > kSingularThreshold for i = 0..n. Index n is
/// included on top of the n factors of the basis denominator so that every
/// recurrence denominator is covered as well.
template <typename Scalar>
ValidityCertificate<Scalar> certify_interval(const Interval<Scalar>& interval,
                                             const QParam<Scalar>& q, int n) {
  if (n < 0) throw std::invalid_argument("certify_interval: degree must be nonnegative");
  using std::abs;
  ValidityCertificate<Scalar> cert;
  cert.degree = n;
  cert.valid = true;
  cert.denominators.reserve(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) {
    const Scalar den = d_kernel(interval.a(), interval.b(), q.pow(i));
    cert.denominators.push_back(den);
    if (i == 0 || abs(den) < cert.min_abs_denominator) cert.min_abs_denominator = abs(den);
    if (cert.valid && !(abs(den) > Scalar(kSingularThreshold))) {
      cert.valid = false;
      cert.failing_index = i;
    }
  }
  return cert;
}

/// Throws InvalidIntervalError naming the first failing index.
template <typename Scalar>
void require_valid(const Interval<Scalar>& interval, const QParam<Scalar>& q, int n) {
  const auto cert = certify_interval(interval, q, n);
  if (!cert.valid) {
    throw InvalidIntervalError(
        "interval is singular: d(a,b;q^i) vanishes at i = " + std::to_string(*cert.failing_index),
        cert.failing_index);
  }
}

template <typename Scalar>
struct Barycentric {
  Scalar u;  // d(a,x;1)/d(a,b;1), weight of b
  Scalar v;  // d(x,b;1)/d(a,b;1), weight of a
};

/// Circular barycentric coordinates of (cos x, sin x) relative to the arc
/// from a to b. Arcs of length >= pi are rejected.
template <typename Scalar>
Barycentric<Scalar> circular_barycentric(const Interval<Scalar>& interval, Scalar x) {
  using std::abs;
  using std::sin;
  const Scalar den = sin(interval.b() - interval.a());
  if (!(interval.length() < std::numbers::pi_v<Scalar>) || !(abs(den) > Scalar(kSingularThreshold))) {
    throw InvalidIntervalError("circular barycentric coordinates need an arc shorter than pi", 0);
  }
  return {sin(x - interval.a()) / den, sin(interval.b() - x) / den};
}

}  // namespace qtrig
