#include "qtrig/basis.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace qtrig {
namespace {

constexpr double pi = std::numbers::pi;

// B^3_k(pi/4; q=2) on [0, pi/2] and their sum, 50-digit closed form.
constexpr double kCubicQ2[] = {0.3535533905932737622, 0.61871843353822908385,
                               0.61871843353822908385, 0.3535533905932737622};
constexpr double kCubicQ2Sum = 1.9445436482630056921;

double max_abs(const Vectord& v) { return v.cwiseAbs().maxCoeff(); }

TEST(BasisDirectTest, FrozenCubicValues) {
  const Interval iv(0.0, pi / 2);
  const QParam q(2.0);
  for (int k = 0; k <= 3; ++k) {
    const double hp = static_cast<double>(
        oracle::quarter_basis_hp(3, k, oracle::hp_pi() / 4, oracle::HP(2)));
    EXPECT_NEAR(hp, kCubicQ2[k], 1e-16);
    EXPECT_NEAR(basis_value_direct(3, k, pi / 4, q, iv), kCubicQ2[k], 1e-15);
  }
  EXPECT_NEAR(basis_all_direct(3, pi / 4, q, iv).values.sum(), kCubicQ2Sum, 1e-14);
}

TEST(BasisDirectTest, ReferenceValues) {
  const Interval quarter(0.0, pi / 2);
  EXPECT_EQ(basis_value_direct(0, 0, 0.7, QParam(3.0), quarter), 1.0);
  EXPECT_NEAR(basis_value_direct(1, 0, pi / 3, QParam(1.0), quarter), 0.5, 1e-15);
  EXPECT_NEAR(basis_value_direct(1, 1, pi / 3, QParam(1.0), quarter), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_NEAR(basis_value_direct(2, 1, pi / 4, QParam(1.0), quarter), 1.0, 1e-15);
  EXPECT_THROW(basis_value_direct(3, 4, 0.1, QParam(2.0), quarter), std::out_of_range);
  EXPECT_THROW(basis_value_direct(3, -1, 0.1, QParam(2.0), quarter), std::out_of_range);
  EXPECT_THROW(basis_value_direct(1, 0, 0.1, QParam(1.0), Interval(0.0, pi)), InvalidIntervalError);
}

TEST(BasisDirectTest, MatchesHighPrecisionOnGeneralIntervals) {
  std::mt19937_64 rng(21);
  for (const auto& [a, b] : {std::pair{pi / 8, pi / 4}, std::pair{0.3, 1.9}, std::pair{pi, 3 * pi / 2}}) {
    std::uniform_real_distribution<double> ux(a, b);
    const Interval iv(a, b);
    for (double qv : {0.5, 1.3, 2.0}) {
      for (int n = 1; n <= 6; ++n) {
        const double x = ux(rng);
        const auto got = basis_all_direct(n, x, QParam(qv), iv).values;
        for (int k = 0; k <= n; ++k) {
          const double want = static_cast<double>(
              oracle::basis_hp(n, k, oracle::HP(x), oracle::HP(qv), oracle::HP(a), oracle::HP(b)));
          EXPECT_NEAR(got[k], want, 1e-13 * std::max(1.0, max_abs(got)));
        }
      }
    }
  }
}

TEST(BasisRecurrenceTest, ThreeWayAgreement) {
  std::mt19937_64 rng(22);
  for (const auto& [a, b] : {std::pair{0.0, pi / 2}, std::pair{pi / 8, pi / 4}, std::pair{pi, 3 * pi / 2}}) {
    const Interval iv(a, b);
    std::uniform_real_distribution<double> ux(a, b);
    for (double qv : {0.5, 1.0, 1.3, 2.0, 5.0}) {
      const QParam q(qv);
      for (int n = 0; n <= 10; ++n) {
        for (int s = 0; s < 50; ++s) {
          const double x = ux(rng);
          const auto d = basis_all_direct(n, x, q, iv).values;
          const auto r1 = basis_all_recurrence1(n, x, q, iv).values;
          const auto r2 = basis_all_recurrence2(n, x, q, iv).values;
          const double scale = max_abs(d);
          ASSERT_LE((d - r1).cwiseAbs().maxCoeff(), 1e-11 * scale) << "n=" << n << " q=" << qv << " x=" << x;
          ASSERT_LE((d - r2).cwiseAbs().maxCoeff(), 1e-11 * scale) << "n=" << n << " q=" << qv << " x=" << x;
        }
      }
    }
  }
}

TEST(BasisRecurrenceTest, ReferenceValues) {
  const Interval quarter(0.0, pi / 2);
  const auto r1 = basis_all_recurrence1(3, pi / 4, QParam(2.0), quarter).values;
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(r1[k], kCubicQ2[k], 1e-15);
  const auto r0 = basis_all_recurrence2(0, 0.2, QParam(2.0), quarter).values;
  ASSERT_EQ(r0.size(), 1);
  EXPECT_EQ(r0[0], 1.0);
}

TEST(BasisRecurrenceTest, TriangleRowsAreLowerDegreeBases) {
  const Interval iv(pi / 8, pi / 4);
  const QParam q(1.3);
  const double x = pi / 8 + 0.1;
  for (auto form : {Recurrence::First, Recurrence::Second}) {
    const auto rows = basis_triangle(6, x, q, iv, form);
    ASSERT_EQ(rows.size(), 7u);
    for (int m = 0; m <= 6; ++m) {
      const auto direct = basis_all_direct(m, x, q, iv).values;
      ASSERT_EQ(rows[m].size(), m + 1);
      EXPECT_LE((rows[m] - direct).cwiseAbs().maxCoeff(), 1e-12 * max_abs(direct));
    }
  }
}

TEST(BasisPropertyTest, EndpointsAreUnitVectors) {
  for (const auto& [a, b] : {std::pair{0.0, pi / 2}, std::pair{pi / 8, pi / 4}, std::pair{pi, 3 * pi / 2}}) {
    const Interval iv(a, b);
    for (double qv : {0.5, 1.0, 1.5, 3.0}) {
      for (int n = 0; n <= 10; ++n) {
        for (auto eval : {0, 1, 2}) {
          auto at = [&](double x) {
            if (eval == 0) return basis_all_direct(n, x, QParam(qv), iv).values;
            if (eval == 1) return basis_all_recurrence1(n, x, QParam(qv), iv).values;
            return basis_all_recurrence2(n, x, QParam(qv), iv).values;
          };
          const Vectord left = at(a);
          const Vectord right = at(b);
          Vectord e0 = Vectord::Zero(n + 1);
          Vectord en = Vectord::Zero(n + 1);
          e0[0] = 1.0;
          en[n] = 1.0;
          EXPECT_LE((left - e0).cwiseAbs().maxCoeff(), 1e-14) << n << " " << qv;
          EXPECT_LE((right - en).cwiseAbs().maxCoeff(), 1e-14) << n << " " << qv;
        }
      }
    }
  }
}

TEST(BasisPropertyTest, NonNegativeOnQuarterPeriods) {
  for (long k = 0; k < 4; ++k) {
    const Interval iv(k * pi / 2, (k + 1) * pi / 2);
    for (double qv : {0.2, 0.5, 1.0, 1.5, 3.0}) {
      for (int n = 1; n <= 8; ++n) {
        for (double x : iv.uniform_grid(200)) {
          EXPECT_GE(basis_all_direct(n, x, QParam(qv), iv).values.minCoeff(), -1e-14);
        }
      }
    }
  }
}

TEST(BasisPropertyTest, NoPartitionOfUnity) {
  const double sum = basis_all_direct(3, pi / 4, QParam(2.0), Interval(0.0, pi / 2)).values.sum();
  EXPECT_NEAR(sum, kCubicQ2Sum, 1e-14);
  EXPECT_GT(std::abs(sum - 1.0), 0.5);
}

TEST(BasisPropertyTest, QuarterPeriodClosedForm) {
  const Interval iv(0.0, pi / 2);
  for (double qv : {0.5, 1.0, 1.3, 2.0, 5.0}) {
    const QParam q(qv);
    for (int n = 0; n <= 10; ++n) {
      for (double x : {0.05, 0.4, pi / 4, 1.1, 1.5}) {
        const auto got = basis_all_direct(n, x, q, iv).values;
        for (int i = 0; i <= n; ++i) {
          const double closed = std::pow(qv, i * i - n * i) * q_binomial(n, i, q) *
                                std::pow(std::sin(x), i) * std::pow(std::cos(x), n - i);
          EXPECT_LE(std::abs(got[i] - closed), 1e-12 * std::abs(closed)) << n << " " << i << " " << qv;
        }
      }
    }
  }
}

TEST(ClassicalBasisTest, ReferenceValues) {
  const Interval quarter(0.0, pi / 2);
  EXPECT_EQ(classical_trig_basis(1, 1, 0.0, quarter), 0.0);
  EXPECT_NEAR(classical_trig_basis(2, 1, pi / 4, quarter), 1.0, 1e-15);
  EXPECT_THROW(classical_trig_basis(2, 1, 0.3, Interval(0.0, pi)), InvalidIntervalError);
}

TEST(ClassicalBasisTest, QuantumBasisReducesAtQOne) {
  std::mt19937_64 rng(23);
  for (const auto& [a, b] : {std::pair{0.0, pi / 2}, std::pair{pi / 8, pi / 4}, std::pair{0.3, 2.4}}) {
    const Interval iv(a, b);
    std::uniform_real_distribution<double> ux(a - 0.2, b + 0.2);
    for (int n = 0; n <= 10; ++n) {
      for (int s = 0; s < 40; ++s) {
        const double x = ux(rng);
        const auto q1 = basis_all_direct(n, x, QParam(1.0), iv).values;
        for (int k = 0; k <= n; ++k) {
          EXPECT_LE(std::abs(q1[k] - classical_trig_basis(n, k, x, iv)), 1e-13 * std::max(1.0, max_abs(q1)));
        }
      }
    }
  }
}

}  // namespace
}  // namespace qtrig
