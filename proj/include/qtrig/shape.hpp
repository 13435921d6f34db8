#pragma once

// Brute-force shape analysis: total positivity of collocation matrices by
// exhaustive minor enumeration, strict sign changes, and the planar
// predicates (convex hull membership, line crossings) behind the
// hull and variation-diminishing checks.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qtrig/basis.hpp"
#include "qtrig/curve.hpp"
#include "qtrig/errors.hpp"
#include "qtrig/rational.hpp"
#include "qtrig/types.hpp"

namespace qtrig {

// ---------------------------------------------------------------------------
// Collocation matrices

struct QuantumFamily {};
struct ClassicalFamily {};
template <typename Scalar>
struct RationalFamily {
  WeightVector<Scalar> weights;
};

template <typename Scalar>
using BasisFamily = std::variant<QuantumFamily, ClassicalFamily, RationalFamily<Scalar>>;

/// entries(i, j) = phi_i(points[j]); rows follow the basis index.
template <typename Scalar>
struct CollocationMatrix {
  Matrix<Scalar> entries;
  std::vector<Scalar> points;
};

template <typename Scalar>
void require_increasing(std::span<const Scalar> points) {
  for (std::size_t j = 1; j < points.size(); ++j) {
    if (!(points[j - 1] < points[j])) {
      throw std::invalid_argument("collocation points must be strictly increasing");
    }
  }
}

template <typename Scalar>
CollocationMatrix<Scalar> collocation(const BasisFamily<Scalar>& family, int n,
                                      const QParam<Scalar>& q, const Interval<Scalar>& interval,
                                      std::span<const Scalar> points) {
  if (n < 0) throw std::invalid_argument("collocation: degree must be nonnegative");
  require_increasing(points);
  for (Scalar x : points) {
    if (!interval.contains(x)) throw std::invalid_argument("collocation point outside the interval");
  }
  CollocationMatrix<Scalar> out{Matrix<Scalar>(n + 1, static_cast<Eigen::Index>(points.size())),
                                std::vector<Scalar>(points.begin(), points.end())};
  for (std::size_t j = 0; j < points.size(); ++j) {
    const Scalar x = points[j];
    out.entries.col(static_cast<Eigen::Index>(j)) = std::visit(
        [&](const auto& fam) -> Vector<Scalar> {
          using F = std::decay_t<decltype(fam)>;
          if constexpr (std::is_same_v<F, QuantumFamily>) {
            return basis_all_direct(n, x, q, interval).values;
          } else if constexpr (std::is_same_v<F, ClassicalFamily>) {
            Vector<Scalar> v(n + 1);
            for (int k = 0; k <= n; ++k) v[k] = classical_trig_basis(n, k, x, interval);
            return v;
          } else {
            return rational_basis_all(n, x, q, interval, fam.weights).values;
          }
        },
        family);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Total positivity

inline constexpr std::uint64_t kMaxMinors = 1'000'000;

struct MinorWitness {
  std::vector<int> rows;
  std::vector<int> cols;
};

template <typename Scalar>
struct TPReport {
  bool is_tp = true;
  std::uint64_t minors_checked = 0;
  /// Raw determinant of the minor with the smallest scaled value.
  Scalar worst_minor{};
  /// That minor divided by the product of its rows' max-norms.
  Scalar worst_scaled_minor{};
  /// Present iff is_tp is false.
  std::optional<MinorWitness> witness;
};

/// Number of square submatrices of a rows x cols matrix, saturating at
/// kMaxMinors + 1.
inline std::uint64_t count_minors(int rows, int cols) {
  auto choose = [](int n, int k) -> std::uint64_t {
    std::uint64_t c = 1;
    for (int i = 1; i <= k; ++i) {
      c = c * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
      if (c > kMaxMinors) return kMaxMinors + 1;
    }
    return c;
  };
  std::uint64_t total = 0;
  for (int k = 1; k <= std::min(rows, cols); ++k) {
    const std::uint64_t r = choose(rows, k);
    const std::uint64_t c = choose(cols, k);
    if (r > kMaxMinors || c > kMaxMinors || r * c > kMaxMinors) return kMaxMinors + 1;
    total += r * c;
    if (total > kMaxMinors) return kMaxMinors + 1;
  }
  return total;
}

namespace detail {

// Advances a sorted k-subset of 0..n-1 in lexicographic order.
inline bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// Enumerates every square minor. A minor M passes when
/// det(M) >= -tolerance * prod_i max_j |M_ij|.
template <typename Scalar>
TPReport<Scalar> total_positivity_check(const Matrix<Scalar>& m, Scalar tolerance) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  const std::uint64_t count = count_minors(rows, cols);
  if (count > kMaxMinors) {
    throw SizeCapExceededError("a " + std::to_string(rows) + "x" + std::to_string(cols) +
                                   " matrix has more than " + std::to_string(kMaxMinors) +
                                   " minors",
                               count);
  }
  if (!m.allFinite()) throw std::invalid_argument("total_positivity_check: non-finite entry");

  TPReport<Scalar> report;
  bool have_worst = false;
  MinorWitness worst_at;
  Matrix<Scalar> sub;
  for (int order = 1; order <= std::min(rows, cols); ++order) {
    sub.resize(order, order);
    std::vector<int> ri(order);
    for (int i = 0; i < order; ++i) ri[i] = i;
    do {
      std::vector<int> ci(order);
      for (int i = 0; i < order; ++i) ci[i] = i;
      do {
        Scalar scale(1);
        for (int i = 0; i < order; ++i) {
          Scalar row_max(0);
          for (int j = 0; j < order; ++j) {
            sub(i, j) = m(ri[i], ci[j]);
            row_max = std::max(row_max, Scalar(std::abs(sub(i, j))));
          }
          scale *= row_max;
        }
        const Scalar det = order == 1 ? sub(0, 0) : Scalar(Eigen::PartialPivLU<Matrix<Scalar>>(sub).determinant());
        const Scalar scaled = scale > Scalar(0) ? det / scale : Scalar(0);
        ++report.minors_checked;
        if (!have_worst || scaled < report.worst_scaled_minor) {
          have_worst = true;
          report.worst_minor = det;
          report.worst_scaled_minor = scaled;
          worst_at = {ri, ci};
        }
      } while (detail::next_combination(ci, cols));
    } while (detail::next_combination(ri, rows));
  }
  if (have_worst && report.worst_scaled_minor < -tolerance) {
    report.is_tp = false;
    report.witness = std::move(worst_at);
  }
  return report;
}

template <typename Scalar>
TPReport<Scalar> total_positivity_check(const CollocationMatrix<Scalar>& m, Scalar tolerance) {
  return total_positivity_check(m.entries, tolerance);
}

/// Monomial collocation matrix (x_j^i) on nonnegative increasing nodes, the
/// classical totally positive reference system.
template <typename Scalar>
TPReport<Scalar> monomial_tp_reference(int n, std::span<const Scalar> points,
                                       Scalar tolerance = Scalar(1e-9)) {
  if (n < 0 || n > 4) throw std::invalid_argument("monomial_tp_reference: degree must lie in 0..4");
  if (points.empty() || points.size() > 6) {
    throw std::invalid_argument("monomial_tp_reference: between 1 and 6 points");
  }
  require_increasing(points);
  if (points.front() < Scalar(0)) throw std::invalid_argument("monomial_tp_reference: points must be >= 0");
  Matrix<Scalar> m(n + 1, static_cast<Eigen::Index>(points.size()));
  for (std::size_t j = 0; j < points.size(); ++j) {
    Scalar p(1);
    for (int i = 0; i <= n; ++i) {
      m(i, static_cast<Eigen::Index>(j)) = p;
      p *= points[j];
    }
  }
  return total_positivity_check(m, tolerance);
}

// ---------------------------------------------------------------------------
// Strict sign changes

/// Default zero tolerance relative to the largest magnitude in a sequence.
inline constexpr double kRelativeZeroTolerance = 1e-12;

template <typename Scalar>
struct SignSequence {
  std::vector<Scalar> values;
  Scalar zero_tolerance{};

  /// zero_tolerance = rel * max |v|.
  static SignSequence relative(std::vector<Scalar> values,
                               Scalar rel = Scalar(kRelativeZeroTolerance)) {
    Scalar big(0);
    for (Scalar v : values) big = std::max(big, Scalar(std::abs(v)));
    return {std::move(values), rel * big};
  }
};

/// Entries with |v| <= zero_tolerance are dropped; counts strict alternations
/// of what remains.
template <typename Scalar>
int sign_changes_seq(const SignSequence<Scalar>& seq) {
  if (seq.zero_tolerance < Scalar(0)) throw std::invalid_argument("zero tolerance must be >= 0");
  int changes = 0;
  int last = 0;
  for (Scalar v : seq.values) {
    if (std::abs(v) <= seq.zero_tolerance) continue;
    const int s = v > Scalar(0) ? 1 : -1;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Sampled estimate (a lower bound) of S^-(f) from values ordered by parameter.
template <typename Scalar>
int sign_changes_function(std::span<const Scalar> samples) {
  return sign_changes_seq(SignSequence<Scalar>::relative({samples.begin(), samples.end()}));
}

// ---------------------------------------------------------------------------
// Planar predicates

template <typename Scalar>
using Point2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
Scalar cross2(const Point2<Scalar>& u, const Point2<Scalar>& v) {
  return u.x() * v.y() - u.y() * v.x();
}

/// Counter-clockwise hull vertices (monotone chain), collinear points dropped.
template <typename Scalar>
std::vector<Point2<Scalar>> convex_hull(std::vector<Point2<Scalar>> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& r) {
    return p.x() < r.x() || (p.x() == r.x() && p.y() < r.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2<Scalar>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross2<Scalar>(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= Scalar(0)) --k;
    hull[k++] = p;
  }
  const std::size_t lower = k + 1;
  for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
    while (k >= lower && cross2<Scalar>(hull[k - 1] - hull[k - 2], *it - hull[k - 2]) <= Scalar(0)) --k;
    hull[k++] = *it;
  }
  hull.resize(k - 1);
  return hull;
}

template <typename Scalar>
Scalar point_segment_distance(const Point2<Scalar>& p, const Point2<Scalar>& s0,
                              const Point2<Scalar>& s1) {
  const Point2<Scalar> seg = s1 - s0;
  const Scalar len2 = seg.squaredNorm();
  Scalar t = len2 > Scalar(0) ? (p - s0).dot(seg) / len2 : Scalar(0);
  t = std::clamp(t, Scalar(0), Scalar(1));
  return (p - (s0 + t * seg)).norm();
}

/// Membership in a hull from convex_hull(), allowing `slack` distance outside it.
template <typename Scalar>
bool in_convex_hull(const std::vector<Point2<Scalar>>& hull, const Point2<Scalar>& p, Scalar slack) {
  if (hull.empty()) return false;
  if (hull.size() == 1) return (p - hull.front()).norm() <= slack;
  if (hull.size() == 2) return point_segment_distance(p, hull[0], hull[1]) <= slack;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2<Scalar>& v = hull[i];
    const Point2<Scalar> e = hull[(i + 1) % hull.size()] - v;
    if (cross2<Scalar>(e, p - v) < -slack * e.norm()) return false;
  }
  return true;
}

template <typename Scalar>
struct Line2 {
  Point2<Scalar> point;
  Point2<Scalar> direction;

  Scalar signed_distance(const Point2<Scalar>& p) const {
    return cross2<Scalar>(direction, p - point) / direction.norm();
  }
};

/// Sign changes of the signed distance along a sequence of planar points:
/// the number of times the polyline through them crosses the line.
template <typename Scalar>
int line_crossings(const Matrix<Scalar>& points, const Line2<Scalar>& line) {
  if (points.rows() != 2) throw DimensionMismatchError("line crossings need planar points");
  std::vector<Scalar> dist(static_cast<std::size_t>(points.cols()));
  for (Eigen::Index j = 0; j < points.cols(); ++j) {
    dist[j] = line.signed_distance(points.col(j).template head<2>());
  }
  return sign_changes_seq(SignSequence<Scalar>::relative(std::move(dist)));
}

template <typename Scalar>
Matrix<Scalar> sample_points(const std::vector<CurveSample<Scalar>>& samples) {
  if (samples.empty()) return Matrix<Scalar>();
  Matrix<Scalar> m(samples.front().point.size(), static_cast<Eigen::Index>(samples.size()));
  for (std::size_t j = 0; j < samples.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = samples[j].point;
  return m;
}

}  // namespace qtrig
