#include "stiefel_sr/random.hpp"

#include <cmath>

namespace stiefel_sr {

DenseMatrix random_gaussian(Index rows, Index cols, FieldMode mode, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  DenseMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = mode == FieldMode::complex ? normal(rng) : 0.0;
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

UnitaryMatrix random_unitary(Index n, FieldMode mode, Rng& rng) {
  // QR of a Gaussian matrix with the phases of diag(R) moved into Q.
  const DenseMatrix g = random_gaussian(n, n, mode, rng);
  Eigen::HouseholderQR<DenseMatrix> qr(g);
  DenseMatrix q = qr.householderQ();
  const DenseMatrix r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    const double a = std::abs(r(j, j));
    if (a > 0.0) q.col(j) *= r(j, j) / a;
  }
  if (mode == FieldMode::real) {
    q.imag().setZero();
    if (q.real().determinant() < 0.0) q.col(0) *= -1.0;
  }
  return UnitaryMatrix(std::move(q), mode);
}

SkewHermitianMatrix random_skew(Index n, FieldMode mode, Rng& rng,
                                double scale) {
  const DenseMatrix g = random_gaussian(n, n, mode, rng);
  return SkewHermitianMatrix(0.5 * scale * (g - g.adjoint()), mode);
}

BlockVelocity random_block_velocity(Index n, Index k, FieldMode mode, Rng& rng,
                                    double a_scale, double b_scale) {
  SkewHermitianMatrix a = random_skew(k, mode, rng, a_scale);
  DenseMatrix b = b_scale * random_gaussian(k, n - k, mode, rng);
  return BlockVelocity(std::move(a), std::move(b));
}

double uniform(Rng& rng, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  return dist(rng);
}

}  // namespace stiefel_sr
