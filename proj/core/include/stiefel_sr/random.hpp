#pragma once

// Seeded samplers for matrices and velocities. All draws come from a caller
// supplied std::mt19937_64, so results are reproducible for a fixed seed on a
// fixed standard library.

#include <cstdint>
#include <random>

#include "stiefel_sr/homspace.hpp"
#include "stiefel_sr/matcore.hpp"

namespace stiefel_sr {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard normal (real and imaginary parts in complex mode).
DenseMatrix random_gaussian(Index rows, Index cols, FieldMode mode, Rng& rng);

/// Haar-distributed element of U(n); of SO(n) in real mode.
UnitaryMatrix random_unitary(Index n, FieldMode mode, Rng& rng);

SkewHermitianMatrix random_skew(Index n, FieldMode mode, Rng& rng,
                                double scale = 1.0);

/// A and B with Gaussian entries scaled by `a_scale` and `b_scale`.
BlockVelocity random_block_velocity(Index n, Index k, FieldMode mode, Rng& rng,
                                    double a_scale = 1.0, double b_scale = 1.0);

/// Uniform draw on [lo, hi).
double uniform(Rng& rng, double lo, double hi);

}  // namespace stiefel_sr
