#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/geodesic.hpp"
#include "stiefel_sr/random.hpp"
#include "support/oracles.hpp"

using namespace stiefel_sr;
using std::numbers::pi;

namespace {

constexpr FieldMode kModes[] = {FieldMode::complex, FieldMode::real};

BlockVelocity v21(double lambda, Complex x2) {
  DenseMatrix a(1, 1);
  a(0, 0) = Complex(0.0, lambda);
  DenseMatrix b(1, 1);
  b(0, 0) = x2;
  return BlockVelocity(SkewHermitianMatrix(a), b);
}

}  // namespace

TEST(NormalGeodesic, MatchesSeriesOracle) {
  Rng rng(1);
  for (FieldMode mode : kModes) {
    for (int trial = 0; trial < 60; ++trial) {
      const Index n = 2 + trial % 5;
      const Index k = 1 + trial % (n - 1);
      const BlockVelocity v = random_block_velocity(n, k, mode, rng);
      const double t = uniform(rng, -3.0, 3.0);
      const DenseMatrix expected = oracle::geodesic_columns(v.embed().body(), k, t);
      EXPECT_LT(oracle::max_abs(normal_geodesic(GeodesicSpec(v), t).cols() - expected),
                1e-10);
      EXPECT_LT(oracle::max_abs(GeodesicEvaluator(GeodesicSpec(v)).columns(t) - expected),
                1e-10);
    }
  }
}

TEST(NormalGeodesic, StartsAtIdentity) {
  Rng rng(2);
  const BlockVelocity v = random_block_velocity(5, 2, FieldMode::complex, rng);
  EXPECT_EQ(normal_geodesic(GeodesicSpec(v), 0.0).cols(), DenseMatrix::Identity(5, 2));
}

TEST(NormalGeodesic, ZeroVelocityStaysAtIdentity) {
  const BlockVelocity v = BlockVelocity::zero(4, 2);
  for (double t : {0.5, 1.0, 7.0}) {
    EXPECT_LT(oracle::max_abs(normal_geodesic(GeodesicSpec(v), t).cols() -
                              DenseMatrix::Identity(4, 2)),
              1e-15);
  }
}

TEST(NormalGeodesic, HorizontalAlongTheCurve) {
  // gamma^* gamma' = 0 for the finite-difference velocity of the oracle curve.
  Rng rng(3);
  for (FieldMode mode : kModes) {
    for (int trial = 0; trial < 20; ++trial) {
      const BlockVelocity v = random_block_velocity(5, 2, mode, rng);
      const DenseMatrix body = v.embed().body();
      const auto curve = [&](double t) { return oracle::geodesic_columns(body, 2, t); };
      const double t = uniform(rng, 0.1, 3.0);
      const StiefelPoint p(curve(t), mode);
      const DenseMatrix fd = oracle::derivative(curve, t);
      EXPECT_LT(oracle::max_abs(vertical_component_at(p, fd)), 1e-8);
      const GeodesicEvaluator eval{GeodesicSpec(v)};
      EXPECT_LT(oracle::max_abs(eval.ambient_velocity(t) - fd), 1e-8);
      EXPECT_LT(oracle::max_abs(vertical_component_at(p, eval.ambient_velocity(t))),
                1e-12);
    }
  }
}

TEST(NormalGeodesic, ConstantSpeedIndependentOfA) {
  Rng rng(4);
  for (FieldMode mode : kModes) {
    for (int trial = 0; trial < 20; ++trial) {
      const BlockVelocity v = random_block_velocity(4, 2, mode, rng);
      const GeodesicEvaluator eval{GeodesicSpec(v)};
      const double expected = speed_squared(v);
      for (double t : {0.0, 0.7, 2.5, 6.0}) {
        EXPECT_NEAR(metric_at(eval.point(t), eval.ambient_velocity(t)), expected,
                    1e-10 * expected);
      }
      const BlockVelocity horizontal = BlockVelocity::horizontal(v.b_block(), mode);
      EXPECT_DOUBLE_EQ(speed_squared(v), speed_squared(horizontal));
      const double scale = mode == FieldMode::complex ? 4.0 * 4 : 2.0;
      EXPECT_NEAR(expected, scale * v.b_block().squaredNorm(), 1e-12 * expected);
    }
  }
}

TEST(NormalGeodesic, LengthMatchesSimpsonOracle) {
  Rng rng(5);
  for (FieldMode mode : kModes) {
    for (int trial = 0; trial < 6; ++trial) {
      const Index n = 2 + trial % 3;
      const BlockVelocity v = random_block_velocity(n, 1, mode, rng);
      const DenseMatrix body = v.embed().body();
      const auto curve = [&](double t) { return oracle::geodesic_columns(body, 1, t); };
      const double scale = mode == FieldMode::complex ? 4.0 * static_cast<double>(n) : 2.0;
      const auto speed = [&](double t) {
        const DenseMatrix y = curve(t);
        const DenseMatrix dy = oracle::derivative(curve, t);
        const DenseMatrix x2 = dy - y * (y.adjoint() * dy);
        return std::sqrt(scale * x2.squaredNorm());
      };
      const double horizon = uniform(rng, 0.5, 2.0);
      const double expected = oracle::simpson(speed, 0.0, horizon);
      EXPECT_NEAR(length(v, horizon), expected, 1e-7 * expected);
    }
  }
}

TEST(NormalGeodesic, ProjectsToGrassmannGeodesic) {
  // pi(gamma(t)) is the projector of exp(tv) onto its first k columns.
  Rng rng(6);
  for (FieldMode mode : kModes) {
    const BlockVelocity v = random_block_velocity(6, 3, mode, rng);
    for (double t : {0.3, 1.1, 4.0}) {
      const GrassmannPoint lhs = project_to_grassmann(normal_geodesic(GeodesicSpec(v), t));
      const GrassmannPoint rhs = grassmann_class(expm_skew(v.embed(), t), 3);
      EXPECT_TRUE(same_subspace(lhs, rhs));
    }
  }
}

TEST(NormalGeodesic, V21HalfTurnReachesMinusE1) {
  const StiefelPoint p = normal_geodesic(GeodesicSpec(v21(0.0, 1.0)), pi);
  EXPECT_NEAR(p.cols()(0, 0).real(), -1.0, 1e-12);
  EXPECT_NEAR(std::abs(p.cols()(1, 0)), 0.0, 1e-12);
}

TEST(ClosedForms, V21MatchesSeriesOracle) {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const double lambda = uniform(rng, -3.0, 3.0);
    const Complex x2(uniform(rng, -2.0, 2.0), uniform(rng, -2.0, 2.0));
    const double t = uniform(rng, 0.0, 2.0 * pi);
    DenseMatrix e = oracle::expm(v21(lambda, x2).embed().body(), t);
    e.col(0) *= std::polar(1.0, -lambda * t);
    const V21Components g = geodesic_v21_closed(lambda, x2, t);
    EXPECT_LT(std::abs(g.g1 - e(0, 0)), 1e-11);
    EXPECT_LT(std::abs(g.g2 - e(0, 1)), 1e-11);
    EXPECT_LT(std::abs(g.g3 - e(1, 0)), 1e-11);
    EXPECT_LT(std::abs(g.g4 - e(1, 1)), 1e-11);
  }
}

TEST(ClosedForms, V21DegenerateCases) {
  const V21Components g = geodesic_v21_closed(1.5, 0.0, 2.0);
  EXPECT_EQ(g.g1, Complex(1.0, 0.0));
  EXPECT_EQ(g.g3, Complex(0.0, 0.0));
  EXPECT_LT(std::abs(g.g4 - std::polar(1.0, 3.0)), 1e-15);
  // lambda = 0, |x2| = 1, t = pi: first column (-1, 0).
  const V21Components h = geodesic_v21_closed(0.0, 1.0, pi);
  EXPECT_LT(std::abs(h.g1 + 1.0), 1e-15);
  EXPECT_LT(std::abs(h.g3), 1e-15);
}

TEST(ClosedForms, Vn1MatchesSeriesOracle) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const Index n = 2 + trial % 6;
    const double x = uniform(rng, -3.0, 3.0);
    const DenseMatrix b = random_gaussian(1, n - 1, FieldMode::complex, rng);
    DenseMatrix a(1, 1);
    a(0, 0) = Complex(0.0, x);
    const BlockVelocity v(SkewHermitianMatrix(a), b);
    const double t = uniform(rng, 0.0, 4.0);
    const DenseMatrix e = oracle::geodesic_columns(v.embed().body(), 1, t);
    const Vn1Column c = geodesic_vn1_closed(x, b, t);
    EXPECT_LT(std::abs(c.g1 - e(0, 0)), 1e-11);
    EXPECT_LT(oracle::max_abs(c.g3 - e.bottomRows(n - 1)), 1e-11);
  }
}

TEST(ClosedForms, GrassmannMatchesSeriesOracle) {
  Rng rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const Index k = 1 + trial % 4;
    const DenseMatrix b = random_gaussian(k, k, FieldMode::complex, rng);
    const double t = uniform(rng, 0.0, 3.0);
    const DenseMatrix e =
        oracle::expm(BlockVelocity::horizontal(b).embed().body(), t).leftCols(k);
    const GrassmannBlocks g = grassmann_geodesic_2kk(b, t);
    EXPECT_LT(oracle::max_abs(g.g1 - e.topRows(k)), 1e-11);
    EXPECT_LT(oracle::max_abs(g.g3 - e.bottomRows(k)), 1e-11);
  }
}

TEST(ClosedForms, GrassmannSingularBUsesSincLimit) {
  DenseMatrix b = DenseMatrix::Zero(2, 2);
  b(0, 0) = 1.0;
  const GrassmannBlocks g = grassmann_geodesic_2kk(b, 0.8);
  EXPECT_NEAR(g.g1(1, 1).real(), 1.0, 1e-15);
  EXPECT_NEAR(g.g3(0, 0).real(), -std::sin(0.8), 1e-15);
  EXPECT_TRUE(g.g3.allFinite());
}

TEST(ClosedForms, OracleSuitesPassAndCatchSignFlip) {
  for (ClosedFormSuite s :
       {ClosedFormSuite::v21, ClosedFormSuite::vn1, ClosedFormSuite::grassmann_2kk}) {
    const ClosedFormReport ok = check_closed_forms(s, 200, 17);
    EXPECT_TRUE(ok.pass) << to_string(s);
    EXPECT_LT(ok.max_error, 1e-9);
    const ClosedFormReport bad = check_closed_forms(s, 200, 17, true);
    EXPECT_FALSE(bad.pass) << to_string(s);
    EXPECT_GT(bad.max_error, 0.1);
  }
  const ClosedFormReport vacuous = check_closed_forms(ClosedFormSuite::v21, 0, 1);
  EXPECT_TRUE(vacuous.pass);
  EXPECT_EQ(vacuous.max_error, 0.0);
}

TEST(FirstVanishingTime, LowerBlockVanishesThere) {
  Rng rng(10);
  for (int trial = 0; trial < 30; ++trial) {
    const double x = uniform(rng, -2.0, 2.0);
    const DenseMatrix b = random_gaussian(1, 3, FieldMode::complex, rng);
    const double t = first_vanishing_time(x, b);
    EXPECT_NEAR(t, 2.0 * pi / std::sqrt(x * x + 4.0 * b.squaredNorm()), 1e-15);
    EXPECT_LT(oracle::max_abs(geodesic_vn1_closed(x, b, t).g3), 1e-12);
    EXPECT_GT(oracle::max_abs(geodesic_vn1_closed(x, b, 0.5 * t).g3), 1e-3);
  }
  EXPECT_THROW(first_vanishing_time(0.0, DenseMatrix::Zero(1, 2)), DomainError);
}

TEST(Length, ProportionalToTime) {
  const BlockVelocity v = v21(0.3, 1.0);
  EXPECT_NEAR(length(v, pi), 2.0 * std::sqrt(2.0) * pi, 1e-13);
  EXPECT_EQ(length(v, 0.0), 0.0);
  EXPECT_THROW(length(v, -1.0), DomainError);
}

TEST(MirrorVelocity, FlipsBAndKeepsLength) {
  Rng rng(11);
  for (FieldMode mode : kModes) {
    const BlockVelocity v = random_block_velocity(5, 2, mode, rng);
    const UnitaryMatrix u = random_unitary(3, mode, rng);
    const BlockVelocity w = mirror_velocity(v, u);
    EXPECT_EQ(w.a_block().body(), v.a_block().body());
    EXPECT_LT(oracle::max_abs(w.b_block() + v.b_block() * u.body()), 1e-15);
    EXPECT_NEAR(length(w, 1.7), length(v, 1.7), 1e-12);
  }
  EXPECT_THROW(mirror_velocity(random_block_velocity(5, 2, FieldMode::complex, rng),
                               UnitaryMatrix::identity(2)),
               DimensionMismatch);
}

TEST(SampleGeodesic, ZeroVelocityGivesIdenticalRows) {
  const auto samples = sample_geodesic(GeodesicSpec(BlockVelocity::zero(3, 1)), 0.0, 1.0, 10);
  ASSERT_EQ(samples.size(), 10u);
  for (const auto& s : samples) EXPECT_EQ(s.point.cols(), samples.front().point.cols());
  std::ostringstream csv;
  write_csv(csv, samples);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "# n=3,k=1,mode=complex");
  std::getline(lines, line);
  EXPECT_EQ(line, "t,re_0_0,im_0_0,re_1_0,im_1_0,re_2_0,im_2_0");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 10);
  EXPECT_THROW(sample_geodesic(GeodesicSpec(BlockVelocity::zero(3, 1)), 0.0, 1.0, 0),
               DomainError);
}
