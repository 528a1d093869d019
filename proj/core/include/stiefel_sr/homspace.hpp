#pragma once

// Stiefel and Grassmann manifolds as quotients of U(n) (or SO(n)).
//
// A Stiefel class [q] is stored by its first k columns, which determine it
// uniquely. A Grassmann class is stored as the orthogonal projector onto the
// span of those columns; in real mode this also absorbs the determinant
// coupling det(S_k) = det(S_{n-k}) of the quotient group O(k) x SO(n-k), since
// the projector is blind to any change of basis inside the subspace.

#include <vector>

#include "stiefel_sr/matcore.hpp"
#include "stiefel_sr/tolerances.hpp"

namespace stiefel_sr {

class StiefelPoint {
 public:
  /// `cols` is n x k with orthonormal columns. Throws InvariantViolation.
  explicit StiefelPoint(DenseMatrix cols, FieldMode mode = FieldMode::complex);

  /// The class of the identity matrix: first k columns of I_n.
  static StiefelPoint identity(Index n, Index k,
                               FieldMode mode = FieldMode::complex);

  Index n() const { return cols_.rows(); }
  Index k() const { return cols_.cols(); }
  FieldMode mode() const { return mode_; }
  const DenseMatrix& cols() const { return cols_; }

  /// Top k x k block.
  DenseMatrix upper_block() const { return cols_.topRows(k()); }
  /// Bottom (n-k) x k block.
  DenseMatrix lower_block() const { return cols_.bottomRows(n() - k()); }

  /// Right action of U(k) on the fibre: p * u.
  StiefelPoint right_multiplied(const UnitaryMatrix& u) const;

 private:
  DenseMatrix cols_;
  FieldMode mode_;
};

/// Entrywise comparison of canonical forms.
bool same_class(const StiefelPoint& a, const StiefelPoint& b,
                double tol = tolerances().eq);
double class_distance(const StiefelPoint& a, const StiefelPoint& b);

class GrassmannPoint {
 public:
  /// Hermitian idempotent of trace k. Throws InvariantViolation.
  GrassmannPoint(DenseMatrix projector, Index k,
                 FieldMode mode = FieldMode::complex);

  Index n() const { return projector_.rows(); }
  Index k() const { return k_; }
  FieldMode mode() const { return mode_; }
  const DenseMatrix& projector() const { return projector_; }

 private:
  DenseMatrix projector_;
  Index k_;
  FieldMode mode_;
};

bool same_subspace(const GrassmannPoint& a, const GrassmannPoint& b,
                   double tol = 1e-10);

/// Tangent vector at the identity class in block form [[A, B], [-B^*, 0]],
/// A in u(k) (so(k) in real mode), B of size k x (n-k).
class BlockVelocity {
 public:
  BlockVelocity(SkewHermitianMatrix a_block, DenseMatrix b_block);

  static BlockVelocity zero(Index n, Index k,
                            FieldMode mode = FieldMode::complex);
  static BlockVelocity horizontal(DenseMatrix b_block,
                                  FieldMode mode = FieldMode::complex);
  static BlockVelocity vertical(SkewHermitianMatrix a_block, Index n);

  Index n() const { return a_.n() + b_.cols(); }
  Index k() const { return a_.n(); }
  FieldMode mode() const { return a_.mode(); }
  const SkewHermitianMatrix& a_block() const { return a_; }
  const DenseMatrix& b_block() const { return b_; }

  /// The n x n skew-Hermitian matrix [[A, B], [-B^*, 0]].
  SkewHermitianMatrix embed() const;

  bool is_horizontal(double tol = tolerances().sym) const;

  BlockVelocity operator+(const BlockVelocity& other) const;
  BlockVelocity scaled(double factor) const;

 private:
  SkewHermitianMatrix a_;
  DenseMatrix b_;
};

/// [q] for q in U(n): the first k columns. Throws DomainError unless
/// 1 <= k <= n.
StiefelPoint canonicalize(const UnitaryMatrix& q, Index k);

/// pi(p) = p p^*. Invariant under the right U(k) action.
GrassmannPoint project_to_grassmann(const StiefelPoint& p);

/// [m] in G_{n,k} for a full unitary m.
GrassmannPoint grassmann_class(const UnitaryMatrix& m, Index k);

struct TangentSplit {
  BlockVelocity vertical;    ///< B = 0
  BlockVelocity horizontal;  ///< A = 0
};

/// Splits a tangent vector at the identity class. Throws InvariantViolation if
/// the lower-right (n-k) x (n-k) block is not zero, i.e. v is not tangent to
/// V_{n,k}.
TangentSplit split_tangent(const SkewHermitianMatrix& v, Index k);

/// The u(k)-valued connection one-form. Its kernel is the horizontal space.
SkewHermitianMatrix connection_form(const BlockVelocity& v);

/// Sub-Riemannian (bundle) metric at any base point; it does not depend on the
/// base point.
double metric(const BlockVelocity& v, const BlockVelocity& w);

/// Connection form at an arbitrary point p for an ambient velocity Ydot
/// (n x k, tangent at p.cols()): the k x k block p^* Ydot.
DenseMatrix vertical_component_at(const StiefelPoint& p,
                                  const DenseMatrix& ambient_velocity);

/// Squared norm of an ambient velocity at p. With X1 = Y^* Ydot and
/// X2 = (I - Y Y^*) Ydot this is 2n|X1|^2 + 4n|X2|^2 (complex) or
/// |X1|^2 + 2|X2|^2 (real), i.e. the trace form of the unique tangent
/// block representing Ydot.
double metric_at(const StiefelPoint& p, const DenseMatrix& ambient_velocity);

/// Real dimension of V_{n,k}: 2nk - k^2 (complex), nk - k(k+1)/2 (real).
Index stiefel_dimension(Index n, Index k, FieldMode mode);
/// Real dimension of the horizontal space: 2k(n-k) (complex), k(n-k) (real).
Index horizontal_dimension(Index n, Index k, FieldMode mode);
/// Real dimension of the fibre u(k) / so(k).
Index vertical_dimension(Index k, FieldMode mode);

/// Elementary real basis of the horizontal blocks (E_ij and i E_ij).
std::vector<BlockVelocity> horizontal_basis(Index n, Index k, FieldMode mode);
/// Elementary real basis of u(k) (so(k)) embedded as vertical blocks.
std::vector<BlockVelocity> vertical_basis(Index n, Index k, FieldMode mode);

}  // namespace stiefel_sr
