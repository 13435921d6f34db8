#include "qtrig/rational.hpp"
#include "qtrig/shape.hpp"

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "generators.hpp"
#include "oracles.hpp"

namespace qtrig {
namespace {

constexpr double pi = std::numbers::pi;

ControlPolygon<double> fig4() { return ControlPolygon<double>::from_points({{0, 0}, {1, 2}, {2, 2}, {3, 0}}); }

// R^3_1(pi/4; q=2) on [0, pi/2] with unit weights: 7/22.
constexpr double kR31Q2 = 0.31818181818181818182;

// Largest distance of the unit-weight figure curve (129 samples) from the
// segment b0 b3 for q = 1, 2, 3; equal to the height at pi/4, i.e. the
// normalized y coordinate 3/2, 14/11 and 13/11.
constexpr double kChordQ[] = {1.5, 1.2727272727272727273, 1.1818181818181818182};

std::vector<Point2<double>> hull_of(const ControlPolygon<double>& p) {
  std::vector<Point2<double>> pts;
  for (int k = 0; k <= p.degree(); ++k) pts.emplace_back(p.points()(0, k), p.points()(1, k));
  return convex_hull(pts);
}

TEST(WeightVectorTest, Construction) {
  EXPECT_THROW(WeightVector<double>(std::vector<double>{}), std::invalid_argument);
  EXPECT_THROW(WeightVector<double>(std::vector<double>{1.0, NAN}), std::invalid_argument);
  EXPECT_TRUE(WeightVector<double>::ones(4).all_positive());
  EXPECT_FALSE(WeightVector<double>(std::vector<double>{1.0, 0.0}).all_positive());
}

TEST(RationalBasisTest, FrozenValue) {
  oracle::HP sum = 0;
  for (int k = 0; k <= 3; ++k) sum += oracle::quarter_basis_hp(3, k, oracle::hp_pi() / 4, oracle::HP(2));
  const oracle::HP r1 = oracle::quarter_basis_hp(3, 1, oracle::hp_pi() / 4, oracle::HP(2)) / sum;
  EXPECT_NEAR(static_cast<double>(r1), kR31Q2, 1e-17);
  const auto r = rational_basis_all(3, pi / 4, QParam(2.0), Interval(0.0, pi / 2), WeightVector<double>::ones(4));
  EXPECT_NEAR(r.values[1], kR31Q2, 1e-15);
}

TEST(RationalBasisTest, EqualWeightsAtQOneNormalizeTheClassicalBasis) {
  // The classical circular values do not sum to one; equal weights at q = 1
  // yield them divided by their sum.
  const Interval iv(pi / 8, pi / 4);
  const auto w = WeightVector<double>(std::vector<double>{2.5, 2.5, 2.5, 2.5});
  for (double x : iv.uniform_grid(17)) {
    const auto r = rational_basis_all(3, x, QParam(1.0), iv, w).values;
    double total = 0;
    for (int k = 0; k <= 3; ++k) total += classical_trig_basis(3, k, x, iv);
    for (int k = 0; k <= 3; ++k) EXPECT_NEAR(r[k], classical_trig_basis(3, k, x, iv) / total, 1e-15);
  }
}

TEST(RationalBasisTest, EndpointsAreUnitVectors) {
  gen::Rng rng(41);
  for (int t = 0; t < 50; ++t) {
    const int n = gen::uniform_int(rng, 1, 8);
    const QParam q(gen::uniform(rng, 0.5, 3.0));
    const auto iv = gen::quarter(gen::uniform_int(rng, -2, 3));
    const auto w = gen::positive_weights(rng, n);
    const auto left = rational_basis_all(n, iv.a(), q, iv, w).values;
    const auto right = rational_basis_all(n, iv.b(), q, iv, w).values;
    EXPECT_NEAR(left[0], 1.0, 1e-14);
    EXPECT_NEAR(right[n], 1.0, 1e-14);
    EXPECT_LE(left.tail(n).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE(right.head(n).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(RationalBasisTest, PartitionOfUnity) {
  gen::Rng rng(42);
  for (double qv : {0.5, 1.0, 2.0, 5.0}) {
    for (int n = 0; n <= 8; ++n) {
      const auto w = gen::positive_weights(rng, n);
      const auto iv = gen::quarter(gen::uniform_int(rng, 0, 3));
      for (int s = 0; s < 100; ++s) {
        const double x = gen::uniform(rng, iv.a(), iv.b());
        EXPECT_NEAR(rational_basis_all(n, x, QParam(qv), iv, w).values.sum(), 1.0, 1e-12);
      }
    }
  }
}

TEST(RationalBasisTest, NonNegativeOnQuarterPeriods) {
  gen::Rng rng(43);
  for (long k = 0; k < 4; ++k) {
    const auto iv = gen::quarter(k);
    for (double qv : {0.5, 1.0, 2.0}) {
      for (int n = 1; n <= 6; ++n) {
        const auto w = gen::positive_weights(rng, n);
        for (double x : iv.uniform_grid(200)) {
          EXPECT_GE(rational_basis_all(n, x, QParam(qv), iv, w).values.minCoeff(), -1e-14);
        }
      }
    }
  }
}

TEST(RationalBasisTest, WeightScalingInvariance) {
  gen::Rng rng(44);
  for (int t = 0; t < 100; ++t) {
    const int n = gen::uniform_int(rng, 1, 8);
    const QParam q(gen::uniform(rng, 0.5, 3.0));
    const auto iv = gen::quarter(gen::uniform_int(rng, 0, 3));
    const auto w = gen::positive_weights(rng, n);
    const double lambda = gen::uniform(rng, 0.01, 100.0);
    const WeightVector<double> scaled(Vectord(lambda * w.values()));
    const double x = gen::uniform(rng, iv.a(), iv.b());
    const auto r = rational_basis_all(n, x, q, iv, w).values;
    const auto rs = rational_basis_all(n, x, q, iv, scaled).values;
    EXPECT_LE((r - rs).cwiseAbs().maxCoeff(), 1e-13);
    const auto poly = gen::polygon(rng, n, 2);
    EXPECT_LE((rational_evaluate(poly, w, x, q, iv) - rational_evaluate(poly, scaled, x, q, iv)).cwiseAbs().maxCoeff(),
              1e-13 * std::max(1.0, poly.points().cwiseAbs().maxCoeff()));
  }
}

TEST(RationalBasisTest, Errors) {
  const Interval iv(0.0, pi / 2);
  EXPECT_THROW(rational_basis_all(3, 0.3, QParam(2.0), iv, WeightVector<double>::ones(3)), DimensionMismatchError);
  // Weights (1, -1) at q = 1: cos x - sin x vanishes at pi/4.
  const WeightVector<double> w(std::vector<double>{1.0, -1.0});
  try {
    rational_basis_all(1, pi / 4, QParam(1.0), iv, w);
    FAIL() << "expected a singular denominator";
  } catch (const SingularDenominatorError& e) {
    EXPECT_DOUBLE_EQ(e.x(), pi / 4);
    EXPECT_LE(std::abs(e.denominator()), 1e-15);
  }
}

TEST(RationalCurveTest, ReferenceValues) {
  const Interval iv(0.0, pi / 2);
  const auto ones = WeightVector<double>::ones(4);
  EXPECT_LE(rational_evaluate(fig4(), ones, 0.0, QParam(2.0), iv).norm(), 1e-15);

  const auto same = ControlPolygon<double>::from_points({{1.5, -2.0}, {1.5, -2.0}, {1.5, -2.0}});
  gen::Rng rng(45);
  const auto w = gen::positive_weights(rng, 2);
  for (double x : iv.uniform_grid(9)) {
    const auto p = rational_evaluate(same, w, x, QParam(1.7), iv);
    EXPECT_NEAR(p[0], 1.5, 1e-14);
    EXPECT_NEAR(p[1], -2.0, 1e-14);
  }

  // q = 3 at pi/4: coefficients of the derived rational basis.
  oracle::HP sum = 0;
  oracle::HP coeff[4];
  for (int k = 0; k <= 3; ++k) {
    coeff[k] = oracle::quarter_basis_hp(3, k, oracle::hp_pi() / 4, oracle::HP(3));
    sum += coeff[k];
  }
  const auto p = rational_evaluate(fig4(), ones, pi / 4, QParam(3.0), iv);
  for (int c = 0; c < 2; ++c) {
    oracle::HP want = 0;
    for (int k = 0; k <= 3; ++k) want += fig4().points()(c, k) * coeff[k] / sum;
    EXPECT_NEAR(p[c], static_cast<double>(want), 1e-14);
  }
  EXPECT_NEAR(p[0], 1.5, 1e-14);
  EXPECT_NEAR(p[1], kChordQ[2], 1e-14);
}

TEST(RationalCurveTest, EqualWeightsAtQOneGiveTheNormalizedClassicalCurve) {
  const Interval iv(0.0, pi / 2);
  const auto samples = rational_sample(fig4(), WeightVector<double>::ones(4), QParam(1.0), iv, 65);
  for (const auto& s : samples) {
    double total = 0;
    Vectord want = Vectord::Zero(2);
    for (int k = 0; k <= 3; ++k) {
      const double b = classical_trig_basis(3, k, s.x, iv);
      total += b;
      want += b * fig4().point(k);
    }
    EXPECT_LE((s.point - want / total).norm(), 1e-14);
    EXPECT_GE(s.point[0], -1e-14);
    EXPECT_LE(s.point[0], 3 + 1e-14);
    EXPECT_GE(s.point[1], -1e-14);
    EXPECT_LE(s.point[1], 2 + 1e-14);
  }
}

TEST(RationalCurveTest, SamplesStayInConvexHull) {
  gen::Rng rng(46);
  for (int t = 0; t < 50; ++t) {
    const int n = gen::uniform_int(rng, 1, 6);
    const QParam q(gen::uniform(rng, 0.5, 3.0));
    const auto iv = gen::quarter(gen::uniform_int(rng, -2, 3));
    const auto poly = gen::polygon(rng, n, 2);
    const auto w = gen::positive_weights(rng, n);
    const auto hull = hull_of(poly);
    for (const auto& s : rational_sample(poly, w, q, iv, 129)) {
      EXPECT_TRUE(in_convex_hull(hull, Point2<double>(s.point[0], s.point[1]), 1e-12)) << t << " x=" << s.x;
    }
  }
}

TEST(RationalCurveTest, AffineInvariance) {
  gen::Rng rng(47);
  for (int t = 0; t < 50; ++t) {
    const int n = gen::uniform_int(rng, 1, 6);
    const QParam q(gen::uniform(rng, 0.5, 3.0));
    const auto iv = gen::quarter(gen::uniform_int(rng, 0, 3));
    const auto poly = gen::polygon(rng, n, 2);
    const auto w = gen::positive_weights(rng, n);
    Eigen::Matrix2d a;
    a << gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2), gen::uniform(rng, -2, 2);
    const Eigen::Vector2d shift(gen::uniform(rng, -10, 10), gen::uniform(rng, -10, 10));
    const ControlPolygon<double> mapped(Matrixd((a * poly.points()).colwise() + shift));
    const double x = gen::uniform(rng, iv.a(), iv.b());
    const Vectord lhs = rational_evaluate(mapped, w, x, q, iv);
    const Vectord rhs = a * rational_evaluate(poly, w, x, q, iv) + shift;
    EXPECT_LE((lhs - rhs).norm(), 1e-11 * std::max(1.0, rhs.norm()));
  }
}

TEST(RationalCurveTest, VariationDiminishing) {
  gen::Rng rng(48);
  for (int t = 0; t < 50; ++t) {
    const int n = gen::uniform_int(rng, 1, 5);
    const QParam q(gen::uniform(rng, 0.5, 3.0));
    const auto iv = gen::quarter(gen::uniform_int(rng, 0, 3));
    const auto poly = gen::polygon(rng, n, 2);
    const auto w = gen::positive_weights(rng, n);
    const Matrixd curve = sample_points(rational_sample(poly, w, q, iv, 2048));
    const double angle = gen::uniform(rng, 0, pi);
    const Line2<double> line{Point2<double>(gen::uniform(rng, -3, 3), gen::uniform(rng, -3, 3)),
                             Point2<double>(std::cos(angle), std::sin(angle))};
    EXPECT_LE(line_crossings(curve, line), line_crossings(poly.points(), line)) << t;
  }
}

TEST(RationalSampleTest, EndpointsAndErrors) {
  const Interval iv(0.0, pi / 2);
  const auto s = rational_sample(fig4(), WeightVector<double>::ones(4), QParam(2.0), iv, 2);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_LE((s[0].point - fig4().point(0)).norm(), 1e-14);
  EXPECT_LE((s[1].point - fig4().point(3)).norm(), 1e-14);
  EXPECT_THROW(rational_sample(fig4(), WeightVector<double>::ones(3), QParam(2.0), iv, 5), DimensionMismatchError);
}

TEST(ChordDistanceTest, ReferenceValues) {
  const Vectord b0 = Eigen::Vector2d(0, 0);
  const Vectord b3 = Eigen::Vector2d(3, 0);
  std::vector<CurveSample<double>> on{{0.0, Eigen::Vector2d(1, 0), EvalMethod::Direct},
                                      {0.1, Eigen::Vector2d(2.5, 0), EvalMethod::Direct}};
  EXPECT_EQ(chord_distance_profile(on, b0, b3), 0.0);
  std::vector<CurveSample<double>> one{{0.0, Eigen::Vector2d(1, 2), EvalMethod::Direct}};
  EXPECT_EQ(chord_distance_profile(one, b0, b3), 2.0);
  std::vector<CurveSample<double>> spatial{{0.0, Eigen::Vector3d(1, 2, 3), EvalMethod::Direct}};
  EXPECT_THROW(chord_distance_profile(spatial, b0, b3), DimensionMismatchError);
  EXPECT_THROW(chord_distance_profile({}, b0, b3), std::invalid_argument);
}

TEST(ChordDistanceTest, FigurePolygonApproachesChordAsQGrows) {
  const Interval iv(0.0, pi / 2);
  double previous = INFINITY;
  for (int i = 0; i < 3; ++i) {
    const auto s = rational_sample(fig4(), WeightVector<double>::ones(4), QParam(double(i + 1)), iv, 129);
    const double d = chord_distance_profile(s, fig4().point(0), fig4().point(3));
    EXPECT_NEAR(d, kChordQ[i], 1e-13);
    EXPECT_LT(d, previous);
    previous = d;
  }
}

TEST(CertifyWeightsTest, PositiveWeightsOnQuarterPeriod) {
  const auto c = certify_weights(3, WeightVector<double>::ones(4), QParam(2.0), Interval(0.0, pi / 2));
  EXPECT_TRUE(c.nonsingular);
  EXPECT_TRUE(c.shape_guarantee);
  EXPECT_FALSE(c.singular_x.has_value());
}

TEST(CertifyWeightsTest, MixedSignsWithoutZeroHaveNoShapeGuarantee) {
  const WeightVector<double> w(std::vector<double>{1.0, -0.1, -0.1, 1.0});
  const auto c = certify_weights(3, w, QParam(1.0), Interval(0.0, pi / 2));
  EXPECT_TRUE(c.nonsingular);
  EXPECT_FALSE(c.shape_guarantee);
  EXPECT_GT(c.min_abs_denominator, 0.1);
}

TEST(CertifyWeightsTest, LocatesZeroOfDenominator) {
  // Weights (1, -1) at q = 1 give cos x - sin x, which vanishes at pi/4.
  const WeightVector<double> w(std::vector<double>{1.0, -1.0});
  const auto c = certify_weights(1, w, QParam(1.0), Interval(0.0, pi / 2));
  EXPECT_FALSE(c.nonsingular);
  EXPECT_FALSE(c.shape_guarantee);
  ASSERT_TRUE(c.singular_x.has_value());
  EXPECT_NEAR(*c.singular_x, pi / 4, 1e-12);

  const WeightVector<double> w3(std::vector<double>{1.0, -3.0, -3.0, 1.0});
  EXPECT_FALSE(certify_weights(3, w3, QParam(1.0), Interval(0.0, pi / 2)).nonsingular);
}

TEST(CertifyWeightsTest, NoShapeGuaranteeOffQuarterPeriods) {
  const auto c = certify_weights(3, WeightVector<double>::ones(4), QParam(1.2), Interval(pi / 8, pi / 4));
  EXPECT_TRUE(c.nonsingular);
  EXPECT_FALSE(c.shape_guarantee);
}

}  // namespace
}  // namespace qtrig
