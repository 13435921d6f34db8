#pragma once

// Quantum trigonometric Bezier curves P(x) = sum_k b_k B^n_k(x;q).
//
// Three evaluation routes are provided: direct summation against the basis,
// and the two triangular schemes
//
//   Algorithm 1:  t^(r+1)_k = q^k L t^r_k + R t^r_(k+1)
//   Algorithm 2:  t^(r+1)_k = L t^r_k + q^(n-r-k-1) R t^r_(k+1)
//
// with L = d(x,b;q^(n-r-k-1))/d(a,b;q^(n-r-1)) and
// R = d(a,x;q^k)/d(a,b;q^(n-r-1)). Both apexes equal P(x). The intermediate
// entries also have closed forms (intermediate_explicit). Neither scheme
// yields subdivision control points.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qtrig/basis.hpp"
#include "qtrig/errors.hpp"
#include "qtrig/kernel.hpp"
#include "qtrig/qcalculus.hpp"
#include "qtrig/types.hpp"

namespace qtrig {

/// n+1 control points in R^d stored as the columns of a d x (n+1) matrix.
template <typename Scalar>
class ControlPolygon {
 public:
  explicit ControlPolygon(Matrix<Scalar> points) : points_(std::move(points)) {
    if (points_.cols() == 0 || points_.rows() == 0) {
      throw std::invalid_argument("control polygon needs at least one point of dimension >= 1");
    }
  }

  /// From a list of coordinate arrays; all arrays must share one dimension.
  static ControlPolygon from_points(const std::vector<std::vector<Scalar>>& pts) {
    if (pts.empty() || pts.front().empty()) {
      throw std::invalid_argument("control polygon needs at least one point of dimension >= 1");
    }
    const auto dim = pts.front().size();
    Matrix<Scalar> m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(pts.size()));
    for (std::size_t k = 0; k < pts.size(); ++k) {
      if (pts[k].size() != dim) {
        throw DimensionMismatchError("control point " + std::to_string(k) + " has dimension " +
                                     std::to_string(pts[k].size()) + ", expected " +
                                     std::to_string(dim));
      }
      for (std::size_t i = 0; i < dim; ++i) m(i, k) = pts[k][i];
    }
    return ControlPolygon(std::move(m));
  }

  int degree() const noexcept { return static_cast<int>(points_.cols()) - 1; }
  int dimension() const noexcept { return static_cast<int>(points_.rows()); }
  const Matrix<Scalar>& points() const noexcept { return points_; }
  Vector<Scalar> point(int k) const { return points_.col(k); }

  /// Largest distance between two control points.
  Scalar diameter() const {
    Scalar best(0);
    for (Eigen::Index i = 0; i < points_.cols(); ++i) {
      for (Eigen::Index j = i + 1; j < points_.cols(); ++j) {
        best = std::max(best, (points_.col(i) - points_.col(j)).norm());
      }
    }
    return best;
  }

 private:
  Matrix<Scalar> points_;
};

enum class Algorithm { First, Second };

enum class EvalMethod { Direct, Alg1, Alg2 };

template <typename Scalar>
struct DeCasteljauTableau {
  Algorithm variant;
  /// rows[r] is d x (n-r+1); rows[0] holds the control points.
  std::vector<Matrix<Scalar>> rows;
  Scalar x;
  QParam<Scalar> q;
  Interval<Scalar> interval;

  int degree() const noexcept { return static_cast<int>(rows.size()) - 1; }
  Vector<Scalar> apex() const { return rows.back().col(0); }
};

template <typename Scalar>
struct CurveSample {
  Scalar x;
  Vector<Scalar> point;
  EvalMethod method;
};

template <typename Scalar>
Vector<Scalar> evaluate_direct(const ControlPolygon<Scalar>& polygon, Scalar x,
                               const QParam<Scalar>& q, const Interval<Scalar>& interval) {
  const auto basis = basis_all_direct(polygon.degree(), x, q, interval);
  return polygon.points() * basis.values;
}

template <typename Scalar>
DeCasteljauTableau<Scalar> evaluate_tableau(const ControlPolygon<Scalar>& polygon, Scalar x,
                                            const QParam<Scalar>& q,
                                            const Interval<Scalar>& interval, Algorithm variant) {
  const int n = polygon.degree();
  require_valid(interval, q, n);
  const Scalar a = interval.a();
  const Scalar b = interval.b();
  DeCasteljauTableau<Scalar> tab{variant, {}, x, q, interval};
  tab.rows.reserve(static_cast<std::size_t>(n) + 1);
  tab.rows.push_back(polygon.points());
  for (int r = 0; r < n; ++r) {
    const Matrix<Scalar>& cur = tab.rows.back();
    const Scalar den = d_kernel(a, b, q.pow(n - r - 1));
    Matrix<Scalar> next(cur.rows(), n - r);
    for (int k = 0; k < n - r; ++k) {
      Scalar left = d_kernel(x, b, q.pow(n - r - k - 1)) / den;
      Scalar right = d_kernel(a, x, q.pow(k)) / den;
      if (variant == Algorithm::First) {
        left *= q.pow(k);
      } else {
        right *= q.pow(n - r - k - 1);
      }
      next.col(k) = left * cur.col(k) + right * cur.col(k + 1);
    }
    tab.rows.push_back(std::move(next));
  }
  return tab;
}

template <typename Scalar>
DeCasteljauTableau<Scalar> evaluate_alg1(const ControlPolygon<Scalar>& polygon, Scalar x,
                                         const QParam<Scalar>& q, const Interval<Scalar>& interval) {
  return evaluate_tableau(polygon, x, q, interval, Algorithm::First);
}

template <typename Scalar>
DeCasteljauTableau<Scalar> evaluate_alg2(const ControlPolygon<Scalar>& polygon, Scalar x,
                                         const QParam<Scalar>& q, const Interval<Scalar>& interval) {
  return evaluate_tableau(polygon, x, q, interval, Algorithm::Second);
}

template <typename Scalar>
Vector<Scalar> evaluate(const ControlPolygon<Scalar>& polygon, Scalar x, const QParam<Scalar>& q,
                        const Interval<Scalar>& interval, EvalMethod method) {
  switch (method) {
    case EvalMethod::Alg1:
      return evaluate_alg1(polygon, x, q, interval).apex();
    case EvalMethod::Alg2:
      return evaluate_alg2(polygon, x, q, interval).apex();
    case EvalMethod::Direct:
      break;
  }
  return evaluate_direct(polygon, x, q, interval);
}

/// Closed form of tableau entry (r, k) for either algorithm:
///   sum_j c_j b_(k+j) [r j]_q prod_{i<j} d(a,x;q^(i+k)) prod_{i<r-j} d(x,b;q^(i+n-r-k))
///                              / prod_{i<r} d(a,b;q^(i+n-r))
/// with c_j = q^(k(r-j)) (Algorithm 1) or q^(j(n-r-k)) (Algorithm 2).
template <typename Scalar>
Vector<Scalar> intermediate_explicit(Algorithm variant, int r, int k, Scalar x,
                                     const ControlPolygon<Scalar>& polygon,
                                     const QParam<Scalar>& q, const Interval<Scalar>& interval) {
  const int n = polygon.degree();
  if (r < 0 || r > n || k < 0 || k > n - r) {
    throw std::out_of_range("tableau entry (" + std::to_string(r) + ", " + std::to_string(k) +
                            ") outside a degree-" + std::to_string(n) + " tableau");
  }
  require_valid(interval, q, n);
  const Scalar a = interval.a();
  const Scalar b = interval.b();
  const QBinomialTable<Scalar> binom(r, q);
  Scalar den(1);
  for (int i = 0; i < r; ++i) den *= d_kernel(a, b, q.pow(i + n - r));
  Vector<Scalar> out = Vector<Scalar>::Zero(polygon.dimension());
  for (int j = 0; j <= r; ++j) {
    Scalar coeff = variant == Algorithm::First ? q.pow(k * (r - j)) : q.pow(j * (n - r - k));
    coeff *= binom(r, j);
    for (int i = 0; i < j; ++i) coeff *= d_kernel(a, x, q.pow(i + k));
    for (int i = 0; i < r - j; ++i) coeff *= d_kernel(x, b, q.pow(i + n - r - k));
    out += (coeff / den) * polygon.points().col(k + j);
  }
  return out;
}

/// `count` samples at uniform parameter spacing, endpoints included.
template <typename Scalar>
std::vector<CurveSample<Scalar>> sample_curve(const ControlPolygon<Scalar>& polygon,
                                              const QParam<Scalar>& q,
                                              const Interval<Scalar>& interval, int count,
                                              EvalMethod method) {
  std::vector<CurveSample<Scalar>> samples;
  samples.reserve(static_cast<std::size_t>(std::max(count, 0)));
  for (Scalar x : interval.uniform_grid(count)) {
    samples.push_back({x, evaluate(polygon, x, q, interval, method), method});
  }
  return samples;
}

/// Spanning functions of T_n: {1, cos 2x, sin 2x, ..., cos nx, sin nx} for
/// even n, {cos x, sin x, cos 3x, sin 3x, ..., cos nx, sin nx} for odd n.
template <typename Scalar>
Vector<Scalar> tn_span_functions(int n, Scalar x) {
  using std::cos;
  using std::sin;
  Vector<Scalar> f(n + 1);
  int col = 0;
  if (n % 2 == 0) f[col++] = Scalar(1);
  for (int m = (n % 2 == 0 ? 2 : 1); m <= n; m += 2) {
    f[col++] = cos(Scalar(m) * x);
    f[col++] = sin(Scalar(m) * x);
  }
  return f;
}

/// Normal matrices with a condition number above this are rejected.
inline constexpr double kMaxNormalCondition = 1e12;

/// Least-squares fit of the samples in T_n; returns the largest per-coordinate
/// root-mean-square residual. Near zero means the samples lie in T_n.
template <typename Scalar>
Scalar tn_membership_residual(const std::vector<CurveSample<Scalar>>& samples, int n) {
  if (n < 0) throw std::invalid_argument("tn_membership_residual: degree must be nonnegative");
  if (samples.size() < 2 * (static_cast<std::size_t>(n) + 1)) {
    throw InsufficientSamplesError("T_n fit of degree " + std::to_string(n) + " needs at least " +
                                   std::to_string(2 * (n + 1)) + " samples, got " +
                                   std::to_string(samples.size()));
  }
  const auto m = static_cast<Eigen::Index>(samples.size());
  const auto dim = samples.front().point.size();
  Matrix<Scalar> design(m, n + 1);
  Matrix<Scalar> values(m, dim);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (samples[i].point.size() != dim) {
      throw DimensionMismatchError("samples have mixed dimensions");
    }
    design.row(i) = tn_span_functions(n, samples[i].x).transpose();
    values.row(i) = samples[i].point.transpose();
  }
  const Matrix<Scalar> normal = design.transpose() * design;
  Eigen::SelfAdjointEigenSolver<Matrix<Scalar>> eig(normal, Eigen::EigenvaluesOnly);
  const Scalar lo = eig.eigenvalues().minCoeff();
  const Scalar hi = eig.eigenvalues().maxCoeff();
  if (!(lo > Scalar(0)) || hi / lo > Scalar(kMaxNormalCondition)) {
    throw IllConditionedError("T_n normal equations are ill-conditioned",
                              lo > Scalar(0) ? static_cast<double>(hi / lo)
                                                       : std::numeric_limits<double>::infinity());
  }
  const Matrix<Scalar> coeffs = normal.ldlt().solve(design.transpose() * values);
  const Matrix<Scalar> resid = values - design * coeffs;
  Scalar worst(0);
  for (Eigen::Index c = 0; c < dim; ++c) {
    using std::sqrt;
    worst = std::max(worst, sqrt(resid.col(c).squaredNorm() / Scalar(m)));
  }
  return worst;
}

}  // namespace qtrig
