#pragma once

// Dense matrix algebra over the complex field, with a real mode that reuses
// the same container (imaginary parts identically zero).

#include <complex>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace stiefel_sr {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;
using Index = Eigen::Index;

enum class FieldMode { complex, real };

/// Which normalisation of the trace form to use: -2n Re tr(XY) on u(n),
/// -tr(XY) on so(n).
enum class MetricScale { complex_2n, real_1 };

std::string_view to_string(FieldMode mode);
/// Accepts "complex" or "real"; throws DomainError otherwise.
FieldMode parse_field_mode(std::string_view text);
MetricScale default_scale(FieldMode mode);

double max_abs(const DenseMatrix& m);
bool all_finite(const DenseMatrix& m);
bool has_zero_imaginary_part(const DenseMatrix& m);

/// Throws InvariantViolation unless `m` is finite and, in real mode, real.
void require_dense_invariants(const DenseMatrix& m, FieldMode mode,
                              std::string_view what);

/// Element of u(n), or of so(n) in real mode.
///
/// Construction checks X = -X^* to the global tolerance and then stores the
/// exact skew part (X - X^*)/2, so the diagonal is purely imaginary (zero in
/// real mode) bit for bit.
class SkewHermitianMatrix {
 public:
  explicit SkewHermitianMatrix(DenseMatrix body,
                               FieldMode mode = FieldMode::complex);

  static SkewHermitianMatrix zero(Index n, FieldMode mode = FieldMode::complex);

  Index n() const { return body_.rows(); }
  FieldMode mode() const { return mode_; }
  const DenseMatrix& body() const { return body_; }

  SkewHermitianMatrix operator+(const SkewHermitianMatrix& other) const;
  SkewHermitianMatrix operator-(const SkewHermitianMatrix& other) const;
  SkewHermitianMatrix operator-() const;
  SkewHermitianMatrix scaled(double factor) const;

 private:
  struct Exact {};
  SkewHermitianMatrix(Exact, DenseMatrix body, FieldMode mode);

  DenseMatrix body_;
  FieldMode mode_;
};

/// Element of U(n), or of SO(n) in real mode.
class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(DenseMatrix body, FieldMode mode = FieldMode::complex);

  static UnitaryMatrix identity(Index n, FieldMode mode = FieldMode::complex);

  Index n() const { return body_.rows(); }
  FieldMode mode() const { return mode_; }
  const DenseMatrix& body() const { return body_; }

  UnitaryMatrix adjoint() const;
  UnitaryMatrix operator*(const UnitaryMatrix& other) const;

 private:
  DenseMatrix body_;
  FieldMode mode_;
};

/// Ad-invariant trace form. Symmetric, positive definite.
/// Throws DimensionMismatch / ModeMismatch.
double trace_inner(const SkewHermitianMatrix& x, const SkewHermitianMatrix& y,
                   MetricScale scale);
double trace_inner(const SkewHermitianMatrix& x, const SkewHermitianMatrix& y);

/// exp(tX), computed by diagonalising the Hermitian matrix iX.
/// exp(0 X) is the identity bit for bit.
UnitaryMatrix expm_skew(const SkewHermitianMatrix& x, double t);

struct SkewEigenDecomposition {
  /// Purely imaginary, sorted by imaginary part, descending.
  std::vector<Complex> values;
  /// Columns are eigenvectors; each column's first non-negligible entry is
  /// real and positive. Always complex mode.
  UnitaryMatrix vectors;
};

/// X = V diag(values) V^*.
SkewEigenDecomposition eig_skew(const SkewHermitianMatrix& x);

/// q^{-1} X q.
SkewHermitianMatrix adjoint_action(const UnitaryMatrix& q,
                                   const SkewHermitianMatrix& x);

/// Cached spectral data of a skew-Hermitian X for evaluating exp(tX) at many
/// times. Skips the UnitaryMatrix validation; meant for inner loops.
class SpectralExp {
 public:
  explicit SpectralExp(const SkewHermitianMatrix& x);

  Index n() const { return vectors_.rows(); }
  FieldMode mode() const { return mode_; }

  /// exp(tX).
  DenseMatrix at(double t) const;
  /// First `cols` columns of exp(tX).
  DenseMatrix leading_columns(double t, Index cols) const;

 private:
  DenseMatrix vectors_;
  Eigen::VectorXd frequencies_;  // X = V diag(i w) V^*
  FieldMode mode_;
};

}  // namespace stiefel_sr
