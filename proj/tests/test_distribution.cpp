#include <gtest/gtest.h>

#include "stiefel_sr/distribution.hpp"
#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/random.hpp"
#include "support/oracles.hpp"

using namespace stiefel_sr;

TEST(LieBracket, JacobiIdentity) {
  Rng rng(1);
  for (FieldMode mode : {FieldMode::complex, FieldMode::real}) {
    for (int trial = 0; trial < 30; ++trial) {
      const SkewHermitianMatrix x = random_skew(4, mode, rng);
      const SkewHermitianMatrix y = random_skew(4, mode, rng);
      const SkewHermitianMatrix z = random_skew(4, mode, rng);
      const SkewHermitianMatrix sum = lie_bracket(x, lie_bracket(y, z)) +
                                      lie_bracket(y, lie_bracket(z, x)) +
                                      lie_bracket(z, lie_bracket(x, y));
      EXPECT_LT(oracle::max_abs(sum.body()), 1e-12);
    }
  }
}

TEST(LieBracket, Antisymmetric) {
  Rng rng(2);
  const SkewHermitianMatrix x = random_skew(3, FieldMode::complex, rng);
  const SkewHermitianMatrix y = random_skew(3, FieldMode::complex, rng);
  EXPECT_LT(oracle::max_abs((lie_bracket(x, y) + lie_bracket(y, x)).body()), 1e-15);
}

TEST(LieBracket, HorizontalBracketBlockForm) {
  // [(0,B),(0,C)] = [[-B C^* + C B^*, 0], [0, -B^* C + C^* B]].
  Rng rng(3);
  const BlockVelocity b = random_block_velocity(5, 2, FieldMode::complex, rng, 0.0);
  const BlockVelocity c = random_block_velocity(5, 2, FieldMode::complex, rng, 0.0);
  const DenseMatrix bb = b.b_block();
  const DenseMatrix cc = c.b_block();
  const DenseMatrix got = lie_bracket(b.embed(), c.embed()).body();
  EXPECT_LT(oracle::max_abs(got.topLeftCorner(2, 2) -
                            (-bb * cc.adjoint() + cc * bb.adjoint())),
            1e-13);
  EXPECT_LT(oracle::max_abs(got.bottomRightCorner(3, 3) -
                            (-bb.adjoint() * cc + cc.adjoint() * bb)),
            1e-13);
  EXPECT_LT(oracle::max_abs(got.topRightCorner(2, 3)), 1e-15);
}

TEST(LieBracket, RejectsMismatches) {
  EXPECT_THROW(lie_bracket(SkewHermitianMatrix::zero(2), SkewHermitianMatrix::zero(3)),
               DimensionMismatch);
  EXPECT_THROW(lie_bracket(SkewHermitianMatrix::zero(2),
                           SkewHermitianMatrix::zero(2, FieldMode::real)),
               ModeMismatch);
}

TEST(BracketRank, GeneratingInStepTwoComplex) {
  for (Index n = 2; n <= 8; ++n) {
    for (Index k = 1; k < n; ++k) {
      const BracketReport r = bracket_generating_rank(n, k, FieldMode::complex);
      EXPECT_EQ(r.dim_h, 2 * k * (n - k)) << n << "," << k;
      EXPECT_EQ(r.target_dim, 2 * n * k - k * k);
      EXPECT_TRUE(r.generating) << n << "," << k;
    }
  }
}

TEST(BracketRank, RealMode) {
  for (Index n = 2; n <= 6; ++n) {
    for (Index k = 1; k < n; ++k) {
      const BracketReport r = bracket_generating_rank(n, k, FieldMode::real);
      EXPECT_EQ(r.dim_h, k * (n - k));
      EXPECT_EQ(r.target_dim, n * k - k * (k + 1) / 2);
      EXPECT_TRUE(r.generating) << n << "," << k;
    }
  }
}

TEST(BracketRank, V42Example) {
  const BracketReport r = bracket_generating_rank(4, 2, FieldMode::complex);
  EXPECT_EQ(r.dim_h, 8);
  EXPECT_EQ(r.target_dim, 12);
  EXPECT_EQ(r.dim_h_plus_brackets, 12);
  EXPECT_THROW(bracket_generating_rank(3, 3, FieldMode::complex), DomainError);
}

TEST(RealSpanRank, CountsIndependentDirections) {
  Rng rng(4);
  const SkewHermitianMatrix x = random_skew(3, FieldMode::complex, rng);
  const SkewHermitianMatrix y = random_skew(3, FieldMode::complex, rng);
  std::vector<SkewHermitianMatrix> v{x, y, x + y, x.scaled(2.0)};
  EXPECT_EQ(real_span_rank(v), 2);
  EXPECT_EQ(real_span_rank(std::vector<SkewHermitianMatrix>{}), 0);
}

TEST(StrongBracket, Vn1ForAllSmallN) {
  for (Index n = 2; n <= 8; ++n) {
    const StrongBracketReport r = strongly_bracket_check_vn1(n, 100, 7);
    EXPECT_TRUE(r.strongly_generating) << n;
    EXPECT_EQ(r.passed, 100);
  }
  EXPECT_THROW(strongly_bracket_check_vn1(1, 10, 1), DomainError);
}

TEST(StrongBracket, ZeroSectionRejected) {
  DenseMatrix b = DenseMatrix::Zero(1, 2);
  b(0, 0) = 1e-14;
  EXPECT_FALSE(strongly_bracket_section(b).has_value());
  b(0, 0) = 1.0;
  ASSERT_TRUE(strongly_bracket_section(b).has_value());
  EXPECT_TRUE(*strongly_bracket_section(b));
}

TEST(Montgomery, Examples) {
  const MontgomeryReport v42 = montgomery_condition(12, 8);
  EXPECT_TRUE(v42.condition1);
  EXPECT_TRUE(v42.possible);
  EXPECT_TRUE(v42.in_scope);

  const MontgomeryReport v43 = montgomery_condition(15, 6);
  EXPECT_FALSE(v43.condition1);
  EXPECT_FALSE(v43.condition2);
  EXPECT_FALSE(v43.possible);

  const MontgomeryReport small = montgomery_condition(6, 4);
  EXPECT_TRUE(small.condition1);
  EXPECT_TRUE(small.possible);

  EXPECT_FALSE(montgomery_condition(5, 4).in_scope);  // codimension 1
  EXPECT_TRUE(montgomery_condition(7, 5).condition2);
}

TEST(Montgomery, DichotomyAgainstArithmetic) {
  for (Index m = 3; m <= 60; ++m) {
    for (Index l = 1; l < m; ++l) {
      const MontgomeryReport r = montgomery_condition(m, l);
      EXPECT_EQ(r.possible, l % 4 == 0 || 2 * l >= m + 1);
      EXPECT_EQ(r.in_scope, m - l >= 2);
    }
  }
}
