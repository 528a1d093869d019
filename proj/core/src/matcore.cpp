#include "stiefel_sr/matcore.hpp"

#include <cmath>
#include <string>

#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/tolerances.hpp"

namespace stiefel_sr {
namespace {

constexpr Complex kI{0.0, 1.0};

std::string shape(const DenseMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void require_same(const SkewHermitianMatrix& x, const SkewHermitianMatrix& y) {
  if (x.n() != y.n()) {
    throw DimensionMismatch("skew-Hermitian operands of size " +
                            std::to_string(x.n()) + " and " +
                            std::to_string(y.n()));
  }
  if (x.mode() != y.mode()) {
    throw ModeMismatch("skew-Hermitian operands mix complex and real mode");
  }
}

// Hermitian eigensolve of iX: iX = V diag(h) V^*, h ascending, so
// X = V diag(-i h) V^*. Ascending h is descending imaginary part.
Eigen::SelfAdjointEigenSolver<DenseMatrix> solve_hermitian(
    const SkewHermitianMatrix& x) {
  DenseMatrix h = kI * x.body();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw InvariantViolation("Hermitian eigensolver did not converge");
  }
  return solver;
}

}  // namespace

std::string_view to_string(FieldMode mode) {
  return mode == FieldMode::complex ? "complex" : "real";
}

FieldMode parse_field_mode(std::string_view text) {
  if (text == "complex") return FieldMode::complex;
  if (text == "real") return FieldMode::real;
  throw DomainError("unknown field mode '" + std::string(text) +
                    "' (expected complex or real)");
}

MetricScale default_scale(FieldMode mode) {
  return mode == FieldMode::complex ? MetricScale::complex_2n
                                    : MetricScale::real_1;
}

double max_abs(const DenseMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool all_finite(const DenseMatrix& m) {
  return m.real().allFinite() && m.imag().allFinite();
}

bool has_zero_imaginary_part(const DenseMatrix& m) {
  return (m.imag().array() == 0.0).all();
}

void require_dense_invariants(const DenseMatrix& m, FieldMode mode,
                              std::string_view what) {
  if (!all_finite(m)) {
    throw InvariantViolation(std::string(what) + ": non-finite entry");
  }
  if (mode == FieldMode::real && !has_zero_imaginary_part(m)) {
    throw InvariantViolation(std::string(what) +
                             ": nonzero imaginary part in real mode");
  }
}

// ---------------------------------------------------------------------------

SkewHermitianMatrix::SkewHermitianMatrix(DenseMatrix body, FieldMode mode)
    : mode_(mode) {
  if (body.rows() != body.cols()) {
    throw DimensionMismatch("skew-Hermitian matrix must be square, got " +
                            shape(body));
  }
  require_dense_invariants(body, mode, "skew-Hermitian matrix");
  const double residual = max_abs(body + body.adjoint());
  if (residual > tolerances().sym) {
    throw InvariantViolation("matrix is not skew-Hermitian (residual " +
                             std::to_string(residual) + ")");
  }
  body_ = 0.5 * (body - body.adjoint());
}

SkewHermitianMatrix::SkewHermitianMatrix(Exact, DenseMatrix body,
                                         FieldMode mode)
    : body_(std::move(body)), mode_(mode) {}

SkewHermitianMatrix SkewHermitianMatrix::zero(Index n, FieldMode mode) {
  return SkewHermitianMatrix(Exact{}, DenseMatrix::Zero(n, n), mode);
}

SkewHermitianMatrix SkewHermitianMatrix::operator+(
    const SkewHermitianMatrix& other) const {
  require_same(*this, other);
  return SkewHermitianMatrix(Exact{}, body_ + other.body_, mode_);
}

SkewHermitianMatrix SkewHermitianMatrix::operator-(
    const SkewHermitianMatrix& other) const {
  require_same(*this, other);
  return SkewHermitianMatrix(Exact{}, body_ - other.body_, mode_);
}

SkewHermitianMatrix SkewHermitianMatrix::operator-() const {
  return SkewHermitianMatrix(Exact{}, -body_, mode_);
}

SkewHermitianMatrix SkewHermitianMatrix::scaled(double factor) const {
  return SkewHermitianMatrix(Exact{}, factor * body_, mode_);
}

// ---------------------------------------------------------------------------

UnitaryMatrix::UnitaryMatrix(DenseMatrix body, FieldMode mode)
    : body_(std::move(body)), mode_(mode) {
  if (body_.rows() != body_.cols()) {
    throw DimensionMismatch("unitary matrix must be square, got " +
                            shape(body_));
  }
  require_dense_invariants(body_, mode_, "unitary matrix");
  const Index n = body_.rows();
  const double residual =
      max_abs(body_.adjoint() * body_ - DenseMatrix::Identity(n, n));
  if (residual > tolerances().unit) {
    throw InvariantViolation("matrix is not unitary (residual " +
                             std::to_string(residual) + ")");
  }
  if (mode_ == FieldMode::real && n > 0) {
    const double det = body_.real().determinant();
    if (std::abs(det - 1.0) > tolerances().unit) {
      throw InvariantViolation("real-mode unitary matrix must have det +1, got " +
                               std::to_string(det));
    }
  }
}

UnitaryMatrix UnitaryMatrix::identity(Index n, FieldMode mode) {
  return UnitaryMatrix(DenseMatrix::Identity(n, n), mode);
}

UnitaryMatrix UnitaryMatrix::adjoint() const {
  return UnitaryMatrix(body_.adjoint(), mode_);
}

UnitaryMatrix UnitaryMatrix::operator*(const UnitaryMatrix& other) const {
  if (n() != other.n()) {
    throw DimensionMismatch("unitary product of sizes " + std::to_string(n()) +
                            " and " + std::to_string(other.n()));
  }
  if (mode_ != other.mode_) {
    throw ModeMismatch("unitary product mixes complex and real mode");
  }
  return UnitaryMatrix(body_ * other.body_, mode_);
}

// ---------------------------------------------------------------------------

double trace_inner(const SkewHermitianMatrix& x, const SkewHermitianMatrix& y,
                   MetricScale scale) {
  require_same(x, y);
  if (scale != default_scale(x.mode())) {
    throw ModeMismatch("metric scale is inconsistent with the field mode");
  }
  // tr(XY) = sum_ij X_ij Y_ji without forming the product.
  const Complex tr = (x.body().array() * y.body().transpose().array()).sum();
  if (scale == MetricScale::complex_2n) {
    return -2.0 * static_cast<double>(x.n()) * tr.real();
  }
  return -tr.real();
}

double trace_inner(const SkewHermitianMatrix& x, const SkewHermitianMatrix& y) {
  return trace_inner(x, y, default_scale(x.mode()));
}

UnitaryMatrix expm_skew(const SkewHermitianMatrix& x, double t) {
  if (!std::isfinite(t)) {
    throw DomainError("expm_skew: time must be finite");
  }
  if (t == 0.0) {
    return UnitaryMatrix::identity(x.n(), x.mode());
  }
  return UnitaryMatrix(SpectralExp(x).at(t), x.mode());
}

SkewEigenDecomposition eig_skew(const SkewHermitianMatrix& x) {
  const auto solver = solve_hermitian(x);
  DenseMatrix vectors = solver.eigenvectors();
  const Eigen::VectorXd& h = solver.eigenvalues();

  std::vector<Complex> values(static_cast<std::size_t>(h.size()));
  for (Index j = 0; j < h.size(); ++j) {
    values[static_cast<std::size_t>(j)] = Complex(0.0, -h(j));
    auto col = vectors.col(j);
    const double scale = col.cwiseAbs().maxCoeff();
    for (Index i = 0; i < col.size(); ++i) {
      const double a = std::abs(col(i));
      if (a > 1e-12 * scale) {
        col *= std::conj(col(i)) / a;
        col(i) = Complex(a, 0.0);
        break;
      }
    }
  }
  return {std::move(values), UnitaryMatrix(std::move(vectors))};
}

SkewHermitianMatrix adjoint_action(const UnitaryMatrix& q,
                                   const SkewHermitianMatrix& x) {
  if (q.n() != x.n()) {
    throw DimensionMismatch("adjoint action: sizes differ");
  }
  if (q.mode() != x.mode()) {
    throw ModeMismatch("adjoint action mixes complex and real mode");
  }
  DenseMatrix body = q.body().adjoint() * x.body() * q.body();
  if (x.mode() == FieldMode::real) body = body.real().cast<Complex>();
  return SkewHermitianMatrix(std::move(body), x.mode());
}

// ---------------------------------------------------------------------------

SpectralExp::SpectralExp(const SkewHermitianMatrix& x) : mode_(x.mode()) {
  const auto solver = solve_hermitian(x);
  vectors_ = solver.eigenvectors();
  frequencies_ = -solver.eigenvalues();
}

DenseMatrix SpectralExp::at(double t) const {
  return leading_columns(t, n());
}

DenseMatrix SpectralExp::leading_columns(double t, Index cols) const {
  const Index size = n();
  if (t == 0.0) {
    return DenseMatrix::Identity(size, size).leftCols(cols);
  }
  DenseVector phases(size);
  for (Index j = 0; j < size; ++j) {
    phases(j) = std::polar(1.0, t * frequencies_(j));
  }
  DenseMatrix out = vectors_ * phases.asDiagonal() *
                    vectors_.adjoint().leftCols(cols);
  if (mode_ == FieldMode::real) {
    out.imag().setZero();
  }
  return out;
}

}  // namespace stiefel_sr
