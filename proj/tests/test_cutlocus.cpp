#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stiefel_sr/cutlocus.hpp"
#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/geodesic.hpp"
#include "stiefel_sr/random.hpp"
#include "support/oracles.hpp"

using namespace stiefel_sr;
using std::numbers::pi;

namespace {

StiefelPoint column(Complex a, Complex b) {
  DenseMatrix c(2, 1);
  c << a, b;
  return StiefelPoint(c);
}

BlockVelocity v21(double lambda, Complex x2) {
  DenseMatrix a(1, 1);
  a(0, 0) = Complex(0.0, lambda);
  DenseMatrix b(1, 1);
  b(0, 0) = x2;
  return BlockVelocity(SkewHermitianMatrix(a), b);
}

SearchOptions small_grid() {
  SearchOptions o;
  o.grid.a_count = 24;
  o.grid.phase_count = 24;
  o.grid.t_steps = 96;
  return o;
}

}  // namespace

TEST(InL, Examples) {
  EXPECT_FALSE(in_L(StiefelPoint::identity(2, 1)));
  EXPECT_TRUE(in_L(column(std::polar(1.0, pi / 3), 0.0)));
  EXPECT_FALSE(in_L(column(0.0, 1.0)));
  EXPECT_FALSE(in_L(column(std::polar(1.0, 1e-12), 0.0)));
}

TEST(Classify, Kinds) {
  EXPECT_EQ(classify(column(-1.0, 0.0)).kind, TargetKind::block_diagonal_L);
  EXPECT_EQ(classify(column(0.0, Complex(0.0, 1.0))).kind, TargetKind::antidiagonal);
  EXPECT_EQ(classify(column(std::sqrt(0.5), std::sqrt(0.5))).kind, TargetKind::generic);
  DenseMatrix anti = DenseMatrix::Zero(4, 2);
  anti.bottomRows(2) = DenseMatrix::Identity(2, 2);
  EXPECT_EQ(classify(StiefelPoint(anti)).kind, TargetKind::antidiagonal);
  EXPECT_FALSE(is_antidiagonal(StiefelPoint::identity(3, 1)));
}

TEST(SearchMinimizers, AntipodeOfV21HasACircleOfMinimizers) {
  const MinimizerReport r = search_minimizers(column(-1.0, 0.0));
  EXPECT_GE(r.clusters, 8);
  EXPECT_NEAR(r.min_length, 2.0 * std::sqrt(2.0) * pi, 1e-7);
  for (const Arrival& a : r.arrivals) {
    EXPECT_LE(a.endpoint_error, tolerances().hit);
    EXPECT_NEAR(std::abs(a.velocity.a_block().body()(0, 0)), 0.0, 1e-6);
    EXPECT_NEAR(a.time, pi, 1e-6);
    // Every minimizer's endpoint is recomputed independently.
    EXPECT_LT(oracle::max_abs(oracle::geodesic_columns(a.velocity.embed().body(), 1, a.time) -
                              column(-1.0, 0.0).cols()),
              1e-8);
  }
  EXPECT_EQ(r.label(), "cut locus");
}

TEST(SearchMinimizers, GenericTargetHasOneMinimizer) {
  const StiefelPoint target = normal_geodesic(GeodesicSpec(v21(1.0, 1.0)), 0.3);
  EXPECT_EQ(classify(target).kind, TargetKind::generic);
  const MinimizerReport r = search_minimizers(target);
  EXPECT_EQ(r.clusters, 1);
  EXPECT_NEAR(r.min_length, 0.3 * std::sqrt(8.0), 1e-7);
}

TEST(SearchMinimizers, IdentityIsDegenerate) {
  const MinimizerReport r = search_minimizers(StiefelPoint::identity(3, 1));
  ASSERT_EQ(r.arrivals.size(), 1u);
  EXPECT_EQ(r.arrivals[0].time, 0.0);
  EXPECT_EQ(r.arrivals[0].length, 0.0);
  EXPECT_EQ(r.clusters, 1);
}

TEST(SearchMinimizers, RejectsBadOptions) {
  SearchOptions o;
  o.eps_hit = 1e-9;
  EXPECT_THROW(search_minimizers(column(-1.0, 0.0), o), DomainError);
  o = SearchOptions{};
  o.grid.t_steps = 0;
  EXPECT_THROW(search_minimizers(column(-1.0, 0.0), o), DomainError);
  o = SearchOptions{};
  o.grid.phase_count = 0;
  EXPECT_THROW(search_minimizers(column(-1.0, 0.0), o), DomainError);
}

TEST(SearchMinimizers, NoHitsIsAnEmptyReport) {
  SearchOptions o = small_grid();
  o.grid.t_max = 0.5;  // too short to reach the antipode
  const MinimizerReport r = search_minimizers(column(-1.0, 0.0), o);
  EXPECT_TRUE(r.arrivals.empty());
  EXPECT_EQ(r.clusters, 0);
  EXPECT_FALSE(to_json(r)["pass"].get<bool>());
}

TEST(SearchMinimizers, DeterministicAcrossWorkerCounts) {
  SearchOptions one = small_grid();
  one.workers = 1;
  SearchOptions three = small_grid();
  three.workers = 3;
  const StiefelPoint target = column(std::polar(1.0, 2.0), 0.0);
  EXPECT_EQ(to_json(search_minimizers(target, one)).dump(),
            to_json(search_minimizers(target, three)).dump());
}

TEST(SearchMinimizers, QuasiRandomGridOnV31) {
  SearchOptions o;
  o.grid.samples = 400;
  o.grid.t_steps = 64;
  DenseMatrix c = DenseMatrix::Zero(3, 1);
  c(0, 0) = -1.0;
  const MinimizerReport r = search_minimizers(StiefelPoint(c), o);
  EXPECT_GE(r.clusters, 2);
  EXPECT_NEAR(r.min_length, pi * std::sqrt(12.0), 1e-6);
}

TEST(SearchMinimizers, RealCutPointHasASphereOfMinimizers) {
  for (Index n : {2, 3}) {
    const MinimizerReport r = search_minimizers(real_vn1_cutpoint(n));
    EXPECT_GE(r.clusters, 2);
    EXPECT_NEAR(r.min_length, std::sqrt(2.0) * pi, 1e-7);
    for (const Arrival& a : r.arrivals) EXPECT_NEAR(a.time, pi, 1e-6);
  }
}

TEST(RealCutPoint, Examples) {
  EXPECT_EQ(real_vn1_cutpoint(2).cols()(0, 0), Complex(-1.0, 0.0));
  EXPECT_EQ(real_vn1_cutpoint(3).cols().rows(), 3);
  EXPECT_EQ(real_vn1_cutpoint(3).mode(), FieldMode::real);
  EXPECT_THROW(real_vn1_cutpoint(1), DomainError);
  EXPECT_FALSE(in_L(StiefelPoint::identity(3, 1, FieldMode::real)));
}

TEST(VerifyL, V21AndV42) {
  EXPECT_TRUE(verify_L_subset_cutlocus(2, 1, 100, 1).pass);
  const CheckSummary s = verify_L_subset_cutlocus(4, 2, 50, 2);
  EXPECT_TRUE(s.pass);
  EXPECT_EQ(s.passed, 50);
  EXPECT_LE(s.max_error, tolerances().hit);
  EXPECT_EQ(s.details["label"], "normal cut locus");
  EXPECT_THROW(verify_L_subset_cutlocus(3, 3, 1, 1), DomainError);
}

TEST(VerifyL, AllShapesUpToSixThree) {
  for (FieldMode mode : {FieldMode::complex, FieldMode::real}) {
    for (Index n = 2; n <= 6; ++n) {
      for (Index k = 1; k < n && k <= 3; ++k) {
        EXPECT_TRUE(verify_L_subset_cutlocus(n, k, 10, 100 + n * 10 + k, mode).pass)
            << n << "," << k << "," << to_string(mode);
      }
    }
  }
}

TEST(MirrorSample, ZeroBIsSkipped) {
  const MirrorSample r = check_mirror_sample(BlockVelocity::zero(3, 1),
                                             UnitaryMatrix::identity(2));
  EXPECT_FALSE(r.hit);
}

TEST(MirrorSample, V21HitTimeMatchesClosedForm) {
  const BlockVelocity v = v21(0.7, Complex(0.6, 0.8));
  const MirrorSample r = check_mirror_sample(v, UnitaryMatrix::identity(1));
  ASSERT_TRUE(r.hit);
  EXPECT_NEAR(r.time, 2.0 * pi / std::sqrt(0.49 + 4.0), 1e-12);
  EXPECT_LE(r.endpoint_gap, 1e-12);
  EXPECT_GT(r.velocity_gap, 1.0);
}

TEST(FirstBlockDiagonalTime, NoHitInShortWindow) {
  EXPECT_LT(first_block_diagonal_time(v21(0.0, 1.0), 1.0), 0.0);
  EXPECT_THROW(first_block_diagonal_time(v21(0.0, 1.0), -1.0), DomainError);
}

TEST(VerifyAntidiagonal, KOneToThree) {
  for (Index k = 1; k <= 3; ++k) {
    for (FieldMode mode : {FieldMode::complex, FieldMode::real}) {
      const CheckSummary s = verify_antidiagonal_not_cut(k, 30, 9, mode);
      EXPECT_TRUE(s.pass) << k;
      EXPECT_NEAR(s.details["T0"].get<double>(), pi * std::sqrt(double(k)) / 2.0, 1e-15);
    }
  }
}

TEST(VerifyAntidiagonal, ExplicitDirections) {
  // k = 2, B = I / sqrt(2): gamma3(T0) = -I.
  const double t0 = pi * std::sqrt(2.0) / 2.0;
  const DenseMatrix b = DenseMatrix::Identity(2, 2) / std::sqrt(2.0);
  const GrassmannBlocks g = grassmann_geodesic_2kk(b, t0);
  EXPECT_LT(oracle::max_abs(g.g3 + DenseMatrix::Identity(2, 2)), 1e-12);
  EXPECT_LT(oracle::max_abs(g.g1), 1e-12);
  // B = diag(0.9, sqrt(0.19)): tr(B B^*) = 1, first zero later than T0.
  DenseMatrix c = DenseMatrix::Zero(2, 2);
  c(0, 0) = 0.9;
  c(1, 1) = std::sqrt(0.19);
  EXPECT_GT(pi / (2.0 * std::sqrt(0.19)), t0);
  for (int i = 0; i <= 200; ++i) {
    const double t = t0 * i / 200.0;
    EXPECT_GT(oracle::max_abs(grassmann_geodesic_2kk(c, t).g1), 0.1);
  }
}

TEST(Uniqueness, CaseChecks) {
  const CheckSummary s = uniqueness_case_checks(3, 200, 4);
  EXPECT_TRUE(s.pass);
  EXPECT_TRUE(s.details["sinc_decreasing"].get<bool>());
  EXPECT_NEAR(s.details["tan_a_0_5"].get<double>(), 1.0926, 1e-4);
  EXPECT_NEAR(s.details["tan_b_1_0"].get<double>(), 1.5574, 1e-4);
  EXPECT_LE(s.details["inversion_max_error"].get<double>(), 1e-10);
  EXPECT_THROW(uniqueness_case_checks(1, 1, 1), DomainError);
}

TEST(VelocityGridJson, RoundTripAndErrors) {
  VelocityGrid g;
  g.a_count = 12;
  g.b_norm = 2.0;
  const VelocityGrid h = velocity_grid_from_json(to_json(g));
  EXPECT_EQ(h.a_count, 12);
  EXPECT_EQ(h.b_norm, 2.0);
  EXPECT_THROW(velocity_grid_from_json({{"bogus", 1}}), FormatError);
  EXPECT_THROW(velocity_grid_from_json({{"a_count", "x"}}), FormatError);
}
