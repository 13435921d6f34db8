#pragma once

// Quantum trigonometric Bernstein basis
//
//   B^n_k(x;q) = [n k]_q  prod_{i<k} d(a,x;q^i)  prod_{i<n-k} d(x,b;q^i)
//                -------------------------------------------------------
//                               prod_{i<n} d(a,b;q^i)
//
// evaluated either from the product formula or bottom-up from B^0_0 = 1 with
// one of the two Pascal-type recurrences. Formulas are entire in x; values
// outside [a, b] are computed but carry no shape guarantee.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qtrig/kernel.hpp"
#include "qtrig/qcalculus.hpp"
#include "qtrig/types.hpp"

namespace qtrig {

template <typename Scalar>
struct BasisVector {
  int degree;
  QParam<Scalar> q;
  Interval<Scalar> interval;
  Scalar x;
  Vector<Scalar> values;  // B^n_0 .. B^n_n
};

enum class Recurrence {
  /// B^n_k = q^(n-k) d(a,x;q^(k-1))/D B^(n-1)_(k-1) + d(x,b;q^(n-k-1))/D B^(n-1)_k
  First,
  /// B^n_k = d(a,x;q^(k-1))/D B^(n-1)_(k-1) + q^k d(x,b;q^(n-k-1))/D B^(n-1)_k
  Second,
};

namespace detail {

inline void check_index(int n, int k) {
  if (n < 0) throw std::invalid_argument("basis degree must be nonnegative");
  if (k < 0 || k > n) {
    throw std::out_of_range("basis index " + std::to_string(k) + " outside 0.." + std::to_string(n));
  }
}

// Computes row m of the recurrence triangle from row m-1, in place.
template <typename Scalar>
void recurrence_step(Vector<Scalar>& row, int m, Scalar x, const QParam<Scalar>& q,
                     const Interval<Scalar>& interval, Recurrence form) {
  const Scalar a = interval.a();
  const Scalar b = interval.b();
  const Scalar den = d_kernel(a, b, q.pow(m - 1));
  Vector<Scalar> next(m + 1);
  for (int k = 0; k <= m; ++k) {
    Scalar value(0);
    if (k >= 1) {
      Scalar left = d_kernel(a, x, q.pow(k - 1)) / den * row[k - 1];
      if (form == Recurrence::First) left *= q.pow(m - k);
      value += left;
    }
    if (k <= m - 1) {
      Scalar right = d_kernel(x, b, q.pow(m - k - 1)) / den * row[k];
      if (form == Recurrence::Second) right *= q.pow(k);
      value += right;
    }
    next[k] = value;
  }
  row = std::move(next);
}

}  // namespace detail

/// Single basis value from the product formula.
template <typename Scalar>
Scalar basis_value_direct(int n, int k, Scalar x, const QParam<Scalar>& q,
                          const Interval<Scalar>& interval) {
  detail::check_index(n, k);
  require_valid(interval, q, n);
  Scalar num = q_binomial(n, k, q);
  for (int i = 0; i < k; ++i) num *= d_kernel(interval.a(), x, q.pow(i));
  for (int i = 0; i < n - k; ++i) num *= d_kernel(x, interval.b(), q.pow(i));
  Scalar den(1);
  for (int i = 0; i < n; ++i) den *= d_kernel(interval.a(), interval.b(), q.pow(i));
  return num / den;
}

/// All n+1 basis values from the product formula, sharing prefix products.
template <typename Scalar>
BasisVector<Scalar> basis_all_direct(int n, Scalar x, const QParam<Scalar>& q,
                                     const Interval<Scalar>& interval) {
  if (n < 0) throw std::invalid_argument("basis degree must be nonnegative");
  require_valid(interval, q, n);
  const QBinomialTable<Scalar> binom(n, q);
  // left[k] = prod_{i<k} d(a,x;q^i), right[m] = prod_{i<m} d(x,b;q^i)
  std::vector<Scalar> left(static_cast<std::size_t>(n) + 1, Scalar(1));
  std::vector<Scalar> right(static_cast<std::size_t>(n) + 1, Scalar(1));
  Scalar den(1);
  for (int i = 0; i < n; ++i) {
    left[i + 1] = left[i] * d_kernel(interval.a(), x, q.pow(i));
    right[i + 1] = right[i] * d_kernel(x, interval.b(), q.pow(i));
    den *= d_kernel(interval.a(), interval.b(), q.pow(i));
  }
  Vector<Scalar> values(n + 1);
  for (int k = 0; k <= n; ++k) values[k] = binom(n, k) * left[k] * right[n - k] / den;
  return {n, q, interval, x, std::move(values)};
}

/// Rows 0..n of the recurrence triangle; row m is the degree-m basis.
template <typename Scalar>
std::vector<Vector<Scalar>> basis_triangle(int n, Scalar x, const QParam<Scalar>& q,
                                           const Interval<Scalar>& interval, Recurrence form) {
  if (n < 0) throw std::invalid_argument("basis degree must be nonnegative");
  require_valid(interval, q, n);
  std::vector<Vector<Scalar>> rows;
  rows.reserve(static_cast<std::size_t>(n) + 1);
  Vector<Scalar> row = Vector<Scalar>::Ones(1);
  rows.push_back(row);
  for (int m = 1; m <= n; ++m) {
    detail::recurrence_step(row, m, x, q, interval, form);
    rows.push_back(row);
  }
  return rows;
}

template <typename Scalar>
BasisVector<Scalar> basis_all_recurrence(int n, Scalar x, const QParam<Scalar>& q,
                                         const Interval<Scalar>& interval, Recurrence form) {
  if (n < 0) throw std::invalid_argument("basis degree must be nonnegative");
  require_valid(interval, q, n);
  Vector<Scalar> row = Vector<Scalar>::Ones(1);
  for (int m = 1; m <= n; ++m) detail::recurrence_step(row, m, x, q, interval, form);
  return {n, q, interval, x, std::move(row)};
}

template <typename Scalar>
BasisVector<Scalar> basis_all_recurrence1(int n, Scalar x, const QParam<Scalar>& q,
                                          const Interval<Scalar>& interval) {
  return basis_all_recurrence(n, x, q, interval, Recurrence::First);
}

template <typename Scalar>
BasisVector<Scalar> basis_all_recurrence2(int n, Scalar x, const QParam<Scalar>& q,
                                          const Interval<Scalar>& interval) {
  return basis_all_recurrence(n, x, q, interval, Recurrence::Second);
}

/// Classical circular Bernstein basis
/// binom(n,k) (sin(x-a)/sin(b-a))^k (sin(b-x)/sin(b-a))^(n-k).
template <typename Scalar>
Scalar classical_trig_basis(int n, int k, Scalar x, const Interval<Scalar>& interval) {
  detail::check_index(n, k);
  using std::abs;
  using std::pow;
  using std::sin;
  const Scalar den = sin(interval.b() - interval.a());
  if (!(abs(den) > Scalar(kSingularThreshold))) {
    throw InvalidIntervalError("classical trigonometric basis: sin(b - a) vanishes", 0);
  }
  const Scalar u = sin(x - interval.a()) / den;
  const Scalar v = sin(interval.b() - x) / den;
  return q_binomial(n, k, QParam<Scalar>(Scalar(1))) * pow(u, k) * pow(v, n - k);
}

}  // namespace qtrig
