#pragma once

// Normal sub-Riemannian geodesics from the identity class of V_{n,k}:
//
//   gamma_v(t) = [exp(t v)] exp(-t A(v)),   v = [[A, B], [-B^*, 0]],
//
// plus the closed forms available for V_{2,1}, V_{n,1} and the Grassmann
// geodesics of G_{2k,k}, which the tests check against the generic formula.

#include <cstdint>
#include <iosfwd>
#include <string_view>
#include <vector>

#include "stiefel_sr/homspace.hpp"
#include "stiefel_sr/matcore.hpp"

namespace stiefel_sr {

struct GeodesicSpec {
  explicit GeodesicSpec(BlockVelocity v) : velocity(std::move(v)) {}

  Index n() const { return velocity.n(); }
  Index k() const { return velocity.k(); }
  FieldMode mode() const { return velocity.mode(); }

  BlockVelocity velocity;
};

struct GeodesicSample {
  double t;
  StiefelPoint point;
  double velocity_norm;
};

/// gamma_v(t). The identity class at t = 0.
StiefelPoint normal_geodesic(const GeodesicSpec& spec, double t);

/// Caches the spectral decompositions of v and A so that a geodesic can be
/// evaluated at many times. Const member functions are reentrant.
class GeodesicEvaluator {
 public:
  explicit GeodesicEvaluator(const GeodesicSpec& spec);

  const GeodesicSpec& spec() const { return spec_; }

  /// n x k canonical columns of gamma(t), without validation.
  DenseMatrix columns(double t) const;
  StiefelPoint point(double t) const;

  /// d/dt of columns(t): exp(tv)[:, k:] (-B^* exp(-tA)).
  DenseMatrix ambient_velocity(double t) const;

 private:
  GeodesicSpec spec_;
  SpectralExp full_;
  SpectralExp fibre_;
};

/// Entries of exp(t v) diag(e^{-i lambda t}, 1) for v = [[i lambda, x2],
/// [-conj(x2), 0]], written through
///   mu_1(l, x2, t) = exp(i t (l + s) / 2),  mu_2(l, x2, t) = exp(i t (l - s) / 2),
///   s = sqrt(l^2 + 4|x2|^2).
/// (g1, g3) is the first column, i.e. the point of V_{2,1}.
struct V21Components {
  Complex g1;
  Complex g2;
  Complex g3;
  Complex g4;
};
V21Components geodesic_v21_closed(double lambda, Complex x2, double t);

/// First column of the V_{n,1} geodesic with v = [[i x, B], [-B^*, 0]];
/// `b_row` is 1 x (n-1). g3 is (n-1) x 1.
struct Vn1Column {
  Complex g1;
  DenseMatrix g3;
};
Vn1Column geodesic_vn1_closed(double x, const DenseMatrix& b_row, double t);

/// Upper and lower k x k blocks of exp(t [[0, B], [-B^*, 0]]), B square:
///   g1 = cos(t sqrt(B B^*)),  g3 = -B^* sin(t sqrt(B B^*)) sqrt(B B^*)^{-1},
/// with the matrix functions evaluated through the SVD of B and the
/// sin(t s)/s factor taken as t at s = 0.
struct GrassmannBlocks {
  DenseMatrix g1;
  DenseMatrix g3;
};
GrassmannBlocks grassmann_geodesic_2kk(const DenseMatrix& b, double t);

/// |gamma'(t)|^2, constant along the curve: 4n tr(B B^*) (complex) or
/// 2 tr(B B^T) (real). Independent of A.
double speed_squared(const BlockVelocity& v);

/// Length of gamma_v on [0, T]. Throws DomainError for negative T.
double length(const BlockVelocity& v, double horizon);

/// 2 pi / sqrt(x^2 + 4 |B|^2): the first positive time at which the V_{n,1}
/// geodesic returns to the block-diagonal set. Throws DomainError for a zero
/// velocity.
double first_vanishing_time(double x, const DenseMatrix& b_row);

/// (A, B) -> (A, -B U) for U in U(n-k). Throws DimensionMismatch /
/// ModeMismatch.
BlockVelocity mirror_velocity(const BlockVelocity& v, const UnitaryMatrix& u);

/// `count` equally spaced samples on [t0, t1] (inclusive).
std::vector<GeodesicSample> sample_geodesic(const GeodesicSpec& spec,
                                            double t0, double t1,
                                            Index count);

/// CSV: a comment line "# n=..,k=..,mode=..", a column header
/// "t,re_0_0,im_0_0,re_0_1,..." and one row per sample with the point block
/// in row-major order.
void write_csv(std::ostream& out, const std::vector<GeodesicSample>& samples);

// ---------------------------------------------------------------------------
// Oracle equivalence of the closed forms against the generic formula.

enum class ClosedFormSuite { v21, vn1, grassmann_2kk };

std::string_view to_string(ClosedFormSuite suite);

struct ClosedFormReport {
  ClosedFormSuite suite;
  Index trials;
  double max_error;  ///< max-norm over all trials
  double tolerance;
  bool pass;
};

/// Draws `trials` random inputs (V_{2,1}: lambda, x2, t; V_{n,1}: n <= 8;
/// G_{2k,k}: k <= 4) and compares the closed form with normal_geodesic.
/// `flip_sign` negates the closed-form lower block, a mutation the check must
/// catch. Zero trials is a vacuous pass.
ClosedFormReport check_closed_forms(ClosedFormSuite suite, Index trials,
                                    std::uint64_t seed, bool flip_sign = false,
                                    double tolerance = 1e-9);

}  // namespace stiefel_sr
