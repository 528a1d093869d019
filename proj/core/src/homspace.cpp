#include "stiefel_sr/homspace.hpp"

#include <cmath>
#include <string>

#include "stiefel_sr/errors.hpp"

namespace stiefel_sr {
namespace {

constexpr Complex kI{0.0, 1.0};

void require_k_range(Index n, Index k) {
  if (k < 1 || k > n) {
    throw DomainError("k must satisfy 1 <= k <= n (n=" + std::to_string(n) +
                      ", k=" + std::to_string(k) + ")");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

StiefelPoint::StiefelPoint(DenseMatrix cols, FieldMode mode)
    : cols_(std::move(cols)), mode_(mode) {
  require_dense_invariants(cols_, mode_, "Stiefel point");
  if (cols_.cols() < 1 || cols_.cols() > cols_.rows()) {
    throw DimensionMismatch("Stiefel point must be n x k with 1 <= k <= n");
  }
  const Index k = cols_.cols();
  const double residual =
      max_abs(cols_.adjoint() * cols_ - DenseMatrix::Identity(k, k));
  if (residual > tolerances().unit) {
    throw InvariantViolation("Stiefel point columns are not orthonormal "
                             "(residual " + std::to_string(residual) + ")");
  }
}

StiefelPoint StiefelPoint::identity(Index n, Index k, FieldMode mode) {
  require_k_range(n, k);
  return StiefelPoint(DenseMatrix::Identity(n, n).leftCols(k), mode);
}

StiefelPoint StiefelPoint::right_multiplied(const UnitaryMatrix& u) const {
  if (u.n() != k()) {
    throw DimensionMismatch("fibre action needs a k x k unitary");
  }
  if (u.mode() != mode_) {
    throw ModeMismatch("fibre action mixes complex and real mode");
  }
  return StiefelPoint(cols_ * u.body(), mode_);
}

bool same_class(const StiefelPoint& a, const StiefelPoint& b, double tol) {
  return class_distance(a, b) <= tol;
}

double class_distance(const StiefelPoint& a, const StiefelPoint& b) {
  if (a.n() != b.n() || a.k() != b.k()) {
    throw DimensionMismatch("Stiefel points of different shapes");
  }
  return max_abs(a.cols() - b.cols());
}

// ---------------------------------------------------------------------------

GrassmannPoint::GrassmannPoint(DenseMatrix projector, Index k, FieldMode mode)
    : projector_(std::move(projector)), k_(k), mode_(mode) {
  require_dense_invariants(projector_, mode_, "Grassmann point");
  if (projector_.rows() != projector_.cols()) {
    throw DimensionMismatch("projector must be square");
  }
  require_k_range(projector_.rows(), k_);
  if (max_abs(projector_ - projector_.adjoint()) > 1e-10) {
    throw InvariantViolation("projector is not Hermitian");
  }
  if (max_abs(projector_ * projector_ - projector_) > 1e-9) {
    throw InvariantViolation("projector is not idempotent");
  }
  if (std::abs(projector_.trace().real() - static_cast<double>(k_)) > 1e-9) {
    throw InvariantViolation("projector trace differs from k");
  }
}

bool same_subspace(const GrassmannPoint& a, const GrassmannPoint& b,
                   double tol) {
  if (a.n() != b.n() || a.k() != b.k()) return false;
  return max_abs(a.projector() - b.projector()) <= tol;
}

// ---------------------------------------------------------------------------

BlockVelocity::BlockVelocity(SkewHermitianMatrix a_block, DenseMatrix b_block)
    : a_(std::move(a_block)), b_(std::move(b_block)) {
  if (b_.rows() != a_.n()) {
    throw DimensionMismatch("B block must have k rows");
  }
  require_dense_invariants(b_, a_.mode(), "B block");
}

BlockVelocity BlockVelocity::zero(Index n, Index k, FieldMode mode) {
  require_k_range(n, k);
  return BlockVelocity(SkewHermitianMatrix::zero(k, mode),
                       DenseMatrix::Zero(k, n - k));
}

BlockVelocity BlockVelocity::horizontal(DenseMatrix b_block, FieldMode mode) {
  const Index k = b_block.rows();
  return BlockVelocity(SkewHermitianMatrix::zero(k, mode), std::move(b_block));
}

BlockVelocity BlockVelocity::vertical(SkewHermitianMatrix a_block, Index n) {
  const Index k = a_block.n();
  require_k_range(n, k);
  return BlockVelocity(std::move(a_block), DenseMatrix::Zero(k, n - k));
}

SkewHermitianMatrix BlockVelocity::embed() const {
  const Index k = this->k();
  const Index m = b_.cols();
  DenseMatrix body = DenseMatrix::Zero(k + m, k + m);
  body.topLeftCorner(k, k) = a_.body();
  body.topRightCorner(k, m) = b_;
  body.bottomLeftCorner(m, k) = -b_.adjoint();
  return SkewHermitianMatrix(std::move(body), mode());
}

bool BlockVelocity::is_horizontal(double tol) const {
  return max_abs(a_.body()) <= tol;
}

BlockVelocity BlockVelocity::operator+(const BlockVelocity& other) const {
  if (other.b_.rows() != b_.rows() || other.b_.cols() != b_.cols()) {
    throw DimensionMismatch("block velocities of different shapes");
  }
  return BlockVelocity(a_ + other.a_, b_ + other.b_);
}

BlockVelocity BlockVelocity::scaled(double factor) const {
  return BlockVelocity(a_.scaled(factor), factor * b_);
}

// ---------------------------------------------------------------------------

StiefelPoint canonicalize(const UnitaryMatrix& q, Index k) {
  require_k_range(q.n(), k);
  return StiefelPoint(q.body().leftCols(k), q.mode());
}

GrassmannPoint project_to_grassmann(const StiefelPoint& p) {
  DenseMatrix projector = p.cols() * p.cols().adjoint();
  // Exact Hermitian symmetrisation; the product is Hermitian up to rounding.
  projector = 0.5 * (projector + projector.adjoint()).eval();
  if (p.mode() == FieldMode::real) projector.imag().setZero();
  return GrassmannPoint(std::move(projector), p.k(), p.mode());
}

GrassmannPoint grassmann_class(const UnitaryMatrix& m, Index k) {
  return project_to_grassmann(canonicalize(m, k));
}

TangentSplit split_tangent(const SkewHermitianMatrix& v, Index k) {
  const Index n = v.n();
  require_k_range(n, k);
  const Index m = n - k;
  if (max_abs(v.body().bottomRightCorner(m, m)) > tolerances().sym) {
    throw InvariantViolation(
        "lower-right block is nonzero: not a Stiefel tangent vector");
  }
  const FieldMode mode = v.mode();
  BlockVelocity vertical(SkewHermitianMatrix(v.body().topLeftCorner(k, k), mode),
                         DenseMatrix::Zero(k, m));
  BlockVelocity horizontal(SkewHermitianMatrix::zero(k, mode),
                           v.body().topRightCorner(k, m));
  return {std::move(vertical), std::move(horizontal)};
}

SkewHermitianMatrix connection_form(const BlockVelocity& v) {
  return v.a_block();
}

double metric(const BlockVelocity& v, const BlockVelocity& w) {
  if (v.n() != w.n() || v.k() != w.k()) {
    throw DimensionMismatch("metric of block velocities of different shapes");
  }
  return trace_inner(v.embed(), w.embed());
}

DenseMatrix vertical_component_at(const StiefelPoint& p,
                                  const DenseMatrix& ambient_velocity) {
  if (ambient_velocity.rows() != p.n() || ambient_velocity.cols() != p.k()) {
    throw DimensionMismatch("ambient velocity must be n x k");
  }
  return p.cols().adjoint() * ambient_velocity;
}

double metric_at(const StiefelPoint& p, const DenseMatrix& ambient_velocity) {
  const DenseMatrix x1 = vertical_component_at(p, ambient_velocity);
  const DenseMatrix x2 = ambient_velocity - p.cols() * x1;
  const double v = x1.squaredNorm();
  const double h = x2.squaredNorm();
  if (p.mode() == FieldMode::complex) {
    const double n = static_cast<double>(p.n());
    return 2.0 * n * v + 4.0 * n * h;
  }
  return v + 2.0 * h;
}

Index stiefel_dimension(Index n, Index k, FieldMode mode) {
  require_k_range(n, k);
  return mode == FieldMode::complex ? 2 * n * k - k * k
                                    : n * k - k * (k + 1) / 2;
}

Index horizontal_dimension(Index n, Index k, FieldMode mode) {
  require_k_range(n, k);
  return mode == FieldMode::complex ? 2 * k * (n - k) : k * (n - k);
}

Index vertical_dimension(Index k, FieldMode mode) {
  return mode == FieldMode::complex ? k * k : k * (k - 1) / 2;
}

std::vector<BlockVelocity> horizontal_basis(Index n, Index k, FieldMode mode) {
  require_k_range(n, k);
  std::vector<BlockVelocity> basis;
  const Index m = n - k;
  for (Index i = 0; i < k; ++i) {
    for (Index j = 0; j < m; ++j) {
      DenseMatrix b = DenseMatrix::Zero(k, m);
      b(i, j) = 1.0;
      basis.push_back(BlockVelocity::horizontal(b, mode));
      if (mode == FieldMode::complex) {
        b(i, j) = kI;
        basis.push_back(BlockVelocity::horizontal(b, mode));
      }
    }
  }
  return basis;
}

std::vector<BlockVelocity> vertical_basis(Index n, Index k, FieldMode mode) {
  require_k_range(n, k);
  std::vector<BlockVelocity> basis;
  for (Index i = 0; i < k; ++i) {
    if (mode == FieldMode::complex) {
      DenseMatrix a = DenseMatrix::Zero(k, k);
      a(i, i) = kI;
      basis.push_back(BlockVelocity::vertical(SkewHermitianMatrix(a, mode), n));
    }
    for (Index j = i + 1; j < k; ++j) {
      DenseMatrix a = DenseMatrix::Zero(k, k);
      a(i, j) = 1.0;
      a(j, i) = -1.0;
      basis.push_back(BlockVelocity::vertical(SkewHermitianMatrix(a, mode), n));
      if (mode == FieldMode::complex) {
        a(i, j) = kI;
        a(j, i) = kI;
        basis.push_back(
            BlockVelocity::vertical(SkewHermitianMatrix(a, mode), n));
      }
    }
  }
  return basis;
}

}  // namespace stiefel_sr
