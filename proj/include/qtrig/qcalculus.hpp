#pragma once

// q-integers, q-factorials and Gaussian binomial coefficients.
//
// Gaussian binomials are built with the Pascal-type recurrence
//   [n k] = [n-1 k] + q^(n-k) [n-1 k-1]
// instead of the factorial quotient, which has a removable singularity at
// q = 1 and overflows early for q > 1.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace qtrig {

/// Shape parameter q. Any finite nonzero value can be evaluated; the shape
/// guarantees (total positivity, hull, variation diminishing) need q > 0.
template <typename Scalar>
class QParam {
 public:
  explicit QParam(Scalar q) : q_(q) {
    using std::isfinite;
    if (!isfinite(q) || q == Scalar(0)) {
      throw std::invalid_argument("shape parameter q must be finite and nonzero");
    }
  }

  Scalar value() const noexcept { return q_; }
  bool positive() const noexcept { return q_ > Scalar(0); }

  /// q^e for any integer e (negative exponents included).
  Scalar pow(int e) const {
    Scalar base = e < 0 ? Scalar(1) / q_ : q_;
    unsigned k = e < 0 ? static_cast<unsigned>(-e) : static_cast<unsigned>(e);
    Scalar out(1);
    while (k != 0) {
      if (k & 1u) out *= base;
      base *= base;
      k >>= 1u;
    }
    return out;
  }

 private:
  Scalar q_;
};

template <typename Scalar>
QParam(Scalar) -> QParam<Scalar>;

/// [k]_q = 1 + q + ... + q^(k-1); equals k at q = 1 and 0 for k = 0.
template <typename Scalar>
Scalar q_integer(int k, const QParam<Scalar>& q) {
  if (k < 0) throw std::invalid_argument("q_integer: k must be nonnegative");
  Scalar sum(0);
  for (int i = 0; i < k; ++i) sum = sum * q.value() + Scalar(1);
  return sum;
}

/// [k]_q! = [k]_q [k-1]_q ... [1]_q, with [0]_q! = 1.
template <typename Scalar>
Scalar q_factorial(int k, const QParam<Scalar>& q) {
  if (k < 0) throw std::invalid_argument("q_factorial: k must be nonnegative");
  Scalar out(1);
  for (int i = 2; i <= k; ++i) out *= q_integer(i, q);
  return out;
}

/// Lower-triangular table of Gaussian binomials [m k]_q for 0 <= k <= m <= n.
template <typename Scalar>
class QBinomialTable {
 public:
  QBinomialTable(int n, const QParam<Scalar>& q) : n_(n) {
    if (n < 0) throw std::invalid_argument("QBinomialTable: degree must be nonnegative");
    rows_.reserve(static_cast<std::size_t>(n) + 1);
    rows_.emplace_back(1, Scalar(1));
    for (int m = 1; m <= n; ++m) {
      const auto& prev = rows_.back();
      std::vector<Scalar> row(static_cast<std::size_t>(m) + 1);
      row.front() = Scalar(1);
      row.back() = Scalar(1);
      for (int k = 1; k < m; ++k) {
        row[k] = prev[k] + q.pow(m - k) * prev[k - 1];
      }
      rows_.push_back(std::move(row));
    }
  }

  int degree() const noexcept { return n_; }

  /// [m k]_q; zero when k lies outside 0..m.
  Scalar operator()(int m, int k) const {
    if (m < 0 || m > n_) throw std::out_of_range("QBinomialTable: row out of range");
    if (k < 0 || k > m) return Scalar(0);
    return rows_[m][k];
  }

  const std::vector<Scalar>& row(int m) const { return rows_.at(static_cast<std::size_t>(m)); }

 private:
  int n_;
  std::vector<std::vector<Scalar>> rows_;
};

template <typename Scalar>
QBinomialTable<Scalar> q_binomial_table(int n, const QParam<Scalar>& q) {
  return QBinomialTable<Scalar>(n, q);
}

/// Gaussian binomial [n k]_q; zero for k < 0 or k > n.
template <typename Scalar>
Scalar q_binomial(int n, int k, const QParam<Scalar>& q) {
  if (n < 0) throw std::invalid_argument("q_binomial: n must be nonnegative");
  if (k < 0 || k > n) return Scalar(0);
  // Only the band of the triangle that feeds entry k is needed.
  std::vector<Scalar> row(static_cast<std::size_t>(k) + 1, Scalar(0));
  row[0] = Scalar(1);
  for (int m = 1; m <= n; ++m) {
    for (int j = std::min(m, k); j >= 1; --j) {
      row[j] = row[j] + q.pow(m - j) * row[j - 1];
    }
  }
  return row[k];
}

}  // namespace qtrig
