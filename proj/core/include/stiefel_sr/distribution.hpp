#pragma once

// Lie brackets of the horizontal distribution on V_{n,k} and the rank tests
// built on them.

#include <cstdint>
#include <optional>
#include <span>

#include "stiefel_sr/homspace.hpp"
#include "stiefel_sr/matcore.hpp"

namespace stiefel_sr {

/// XY - YX.
SkewHermitianMatrix lie_bracket(const SkewHermitianMatrix& x,
                                const SkewHermitianMatrix& y);

/// Zeroes the lower-right (n-k) x (n-k) block, i.e. passes from u(n) to the
/// tangent space of V_{n,k} at the identity class.
SkewHermitianMatrix project_to_stiefel_tangent(const SkewHermitianMatrix& x,
                                               Index k);

/// Real dimension of the real span of `vectors`, each flattened to 2n^2 reals
/// (n^2 in real mode). Rank threshold is relative to the largest singular
/// value.
Index real_span_rank(std::span<const SkewHermitianMatrix> vectors,
                     double relative_threshold = 1e-8);

struct BracketReport {
  Index n;
  Index k;
  FieldMode mode;
  Index dim_h;                ///< rank of the horizontal basis
  Index dim_h_plus_brackets;  ///< rank of basis plus first brackets
  Index target_dim;           ///< dimension of V_{n,k}
  bool generating;
};

/// Step-2 bracket generation test at the identity class. Throws DomainError
/// unless 1 <= k < n.
BracketReport bracket_generating_rank(Index n, Index k, FieldMode mode);

/// For one horizontal section Z = [[0, B], [-B^*, 0]] on V_{n,1} (complex):
/// does span{H, [Z, H]} fill the 2n-1 dimensional tangent space? Returns
/// nullopt when |B| is below `zero_threshold` (a zero section is not a valid
/// witness).
std::optional<bool> strongly_bracket_section(const DenseMatrix& b_row,
                                             double zero_threshold = 1e-12);

struct StrongBracketReport {
  Index n;
  Index samples;
  Index passed;
  Index rejected_zero;
  bool strongly_generating;
};

/// Samples random nonzero sections B and applies strongly_bracket_section.
/// Throws DomainError for n < 2.
StrongBracketReport strongly_bracket_check_vn1(Index n, Index samples = 100,
                                               std::uint64_t seed = 1);

struct MontgomeryReport {
  Index m;
  Index l;
  bool in_scope;    ///< 0 < l < m and codimension m - l >= 2
  bool condition1;  ///< l is a multiple of 4
  bool condition2;  ///< l >= (m - l) + 1
  bool possible;    ///< strong bracket generation not excluded
};

/// Necessary condition for an l-dimensional strongly bracket generating
/// distribution on an m-manifold. Outside the scope the conditions are still
/// evaluated, and `in_scope` is false.
MontgomeryReport montgomery_condition(Index m, Index l);

}  // namespace stiefel_sr
