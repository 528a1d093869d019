#pragma once

namespace stiefel_sr {

/// Numerical tolerances shared by every module.
///
/// The record is global and read-only once worker threads are started;
/// configure it (if at all) at program start.
struct Tolerances {
  double sym = 1e-12;      ///< skew-Hermitian residual, max-norm
  double unit = 1e-10;     ///< unitarity / orthonormality residual
  double eq = 1e-9;        ///< class equality of Stiefel points, entrywise
  double hit = 1e-8;       ///< endpoint error accepted by the minimizer search
  double velocity = 1e-3;  ///< Frobenius distance separating two velocities
};

const Tolerances& tolerances();

/// Replace the global record. Not thread-safe; call before spawning workers.
/// Throws DomainError if any entry is not strictly positive.
void set_tolerances(const Tolerances& tol);

}  // namespace stiefel_sr
