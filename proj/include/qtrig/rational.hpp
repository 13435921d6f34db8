#pragma once

// Rational quantum trigonometric Bernstein bases
//   R^n_k(x;q) = w_k B^n_k(x;q) / sum_i w_i B^n_i(x;q)
// and the curves they define. For q > 0, positive weights and a
// quarter-period interval the basis is normalized totally positive, which
// gives endpoint interpolation, the convex hull property, variation
// diminishing and affine invariance.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrig/basis.hpp"
#include "qtrig/curve.hpp"
#include "qtrig/errors.hpp"
#include "qtrig/kernel.hpp"
#include "qtrig/types.hpp"

namespace qtrig {

template <typename Scalar>
class WeightVector {
 public:
  explicit WeightVector(Vector<Scalar> weights) : w_(std::move(weights)) {
    if (w_.size() == 0) throw std::invalid_argument("weight vector must be non-empty");
    if (!w_.allFinite()) throw std::invalid_argument("weights must be finite");
  }

  explicit WeightVector(const std::vector<Scalar>& weights)
      : WeightVector(Vector<Scalar>(
            Eigen::Map<const Vector<Scalar>>(weights.data(), static_cast<Eigen::Index>(weights.size())))) {}

  static WeightVector ones(int count) { return WeightVector(Vector<Scalar>::Ones(count)); }

  int size() const noexcept { return static_cast<int>(w_.size()); }
  const Vector<Scalar>& values() const noexcept { return w_; }
  Scalar operator[](int k) const { return w_[k]; }

  /// All weights strictly positive: required for the shape guarantees.
  bool all_positive() const { return (w_.array() > Scalar(0)).all(); }

 private:
  Vector<Scalar> w_;
};

namespace detail {

template <typename Scalar>
void check_weight_count(int n, const WeightVector<Scalar>& weights) {
  if (weights.size() != n + 1) {
    throw DimensionMismatchError("expected " + std::to_string(n + 1) + " weights, got " +
                                 std::to_string(weights.size()));
  }
}

}  // namespace detail

/// Relative size below which the weighted basis sum counts as zero.
inline constexpr double kRationalSingularRelative = 1e-12;

template <typename Scalar>
BasisVector<Scalar> rational_basis_all(int n, Scalar x, const QParam<Scalar>& q,
                                       const Interval<Scalar>& interval,
                                       const WeightVector<Scalar>& weights) {
  detail::check_weight_count(n, weights);
  auto basis = basis_all_direct(n, x, q, interval);
  const Vector<Scalar> weighted = weights.values().cwiseProduct(basis.values);
  const Scalar den = weighted.sum();
  const Scalar scale = weighted.cwiseAbs().maxCoeff();
  using std::abs;
  if (!(abs(den) > Scalar(kRationalSingularRelative) * scale)) {
    throw SingularDenominatorError("rational denominator vanishes at x = " +
                                       std::to_string(static_cast<double>(x)),
                                   static_cast<double>(x), static_cast<double>(den));
  }
  basis.values = weighted / den;
  return basis;
}

template <typename Scalar>
Vector<Scalar> rational_evaluate(const ControlPolygon<Scalar>& polygon,
                                 const WeightVector<Scalar>& weights, Scalar x,
                                 const QParam<Scalar>& q, const Interval<Scalar>& interval) {
  return polygon.points() * rational_basis_all(polygon.degree(), x, q, interval, weights).values;
}

template <typename Scalar>
std::vector<CurveSample<Scalar>> rational_sample(const ControlPolygon<Scalar>& polygon,
                                                 const WeightVector<Scalar>& weights,
                                                 const QParam<Scalar>& q,
                                                 const Interval<Scalar>& interval, int count) {
  detail::check_weight_count(polygon.degree(), weights);
  std::vector<CurveSample<Scalar>> samples;
  for (Scalar x : interval.uniform_grid(count)) {
    samples.push_back({x, rational_evaluate(polygon, weights, x, q, interval), EvalMethod::Direct});
  }
  return samples;
}

template <typename Scalar>
struct WeightCertificate {
  /// Denominator certified nonzero on the grid (and between grid points).
  bool nonsingular = false;
  /// q > 0, all weights positive and a quarter-period interval.
  bool shape_guarantee = false;
  std::optional<Scalar> singular_x;
  Scalar min_abs_denominator{};
};

inline constexpr int kWeightCertificationGrid = 1024;

/// Grid-based non-singularity certificate for the weighted basis sum. A sign
/// change between neighbouring grid points is bisected to locate the zero.
template <typename Scalar>
WeightCertificate<Scalar> certify_weights(int n, const WeightVector<Scalar>& weights,
                                          const QParam<Scalar>& q,
                                          const Interval<Scalar>& interval,
                                          int grid = kWeightCertificationGrid) {
  detail::check_weight_count(n, weights);
  using std::abs;
  auto denominator = [&](Scalar x) {
    const Vector<Scalar> weighted =
        weights.values().cwiseProduct(basis_all_direct(n, x, q, interval).values);
    return std::pair{weighted.sum(), weighted.cwiseAbs().maxCoeff()};
  };
  WeightCertificate<Scalar> cert;
  cert.nonsingular = true;
  bool first = true;
  Scalar prev_x{};
  Scalar prev_den{};
  for (Scalar x : interval.uniform_grid(grid)) {
    const auto [den, scale] = denominator(x);
    if (first || abs(den) < cert.min_abs_denominator) cert.min_abs_denominator = abs(den);
    if (!(abs(den) > Scalar(kRationalSingularRelative) * scale)) {
      cert.nonsingular = false;
      cert.singular_x = x;
      break;
    }
    if (!first && (den > Scalar(0)) != (prev_den > Scalar(0))) {
      Scalar lo = prev_x;
      Scalar hi = x;
      const bool lo_positive = prev_den > Scalar(0);
      for (int it = 0; it < 100 && lo < hi; ++it) {
        const Scalar mid = (lo + hi) / Scalar(2);
        if (mid <= lo || mid >= hi) break;
        if ((denominator(mid).first > Scalar(0)) == lo_positive) {
          lo = mid;
        } else {
          hi = mid;
        }
      }
      cert.nonsingular = false;
      cert.singular_x = (lo + hi) / Scalar(2);
      cert.min_abs_denominator = Scalar(0);
      break;
    }
    first = false;
    prev_x = x;
    prev_den = den;
  }
  cert.shape_guarantee =
      cert.nonsingular && q.positive() && weights.all_positive() && interval.quarter_period();
  return cert;
}

/// Largest Euclidean distance from a planar sample to the segment [first, last].
template <typename Scalar>
Scalar chord_distance_profile(const std::vector<CurveSample<Scalar>>& samples,
                              const Vector<Scalar>& first, const Vector<Scalar>& last) {
  if (samples.empty()) throw std::invalid_argument("chord_distance_profile: no samples");
  if (first.size() != 2 || last.size() != 2) {
    throw DimensionMismatchError("chord_distance_profile needs planar points");
  }
  const Vector<Scalar> seg = last - first;
  const Scalar len2 = seg.squaredNorm();
  Scalar worst(0);
  for (const auto& s : samples) {
    if (s.point.size() != 2) throw DimensionMismatchError("chord_distance_profile needs planar points");
    Scalar t = len2 > Scalar(0) ? (s.point - first).dot(seg) / len2 : Scalar(0);
    t = std::clamp(t, Scalar(0), Scalar(1));
    worst = std::max(worst, (s.point - (first + t * seg)).norm());
  }
  return worst;
}

}  // namespace qtrig
