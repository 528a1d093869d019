#include <algorithm>
#include <cmath>

#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/geodesic.hpp"
#include "stiefel_sr/random.hpp"

namespace stiefel_sr {
namespace {

constexpr Complex kI{0.0, 1.0};

double v21_trial(Rng& rng, double sign) {
  const double lambda = uniform(rng, -3.0, 3.0);
  const DenseMatrix x = random_gaussian(1, 1, FieldMode::complex, rng);
  const double t = uniform(rng, 0.0, 2.0 * M_PI);
  const Complex x2 = x(0, 0);

  DenseMatrix v(2, 2);
  v << kI * lambda, x2, -std::conj(x2), 0.0;
  DenseMatrix oracle = expm_skew(SkewHermitianMatrix(v), t).body();
  oracle.col(0) *= std::polar(1.0, -lambda * t);

  const V21Components g = geodesic_v21_closed(lambda, x2, t);
  DenseMatrix closed(2, 2);
  closed << g.g1, g.g2, sign * g.g3, g.g4;
  return max_abs(closed - oracle);
}

double vn1_trial(Rng& rng, double sign) {
  std::uniform_int_distribution<Index> pick_n(2, 8);
  const Index n = pick_n(rng);
  const double x = uniform(rng, -3.0, 3.0);
  const DenseMatrix b = random_gaussian(1, n - 1, FieldMode::complex, rng);
  const double t = uniform(rng, 0.0, 2.0 * M_PI);

  DenseMatrix a(1, 1);
  a(0, 0) = kI * x;
  const GeodesicSpec spec(BlockVelocity(SkewHermitianMatrix(a), b));
  const DenseMatrix oracle = normal_geodesic(spec, t).cols();

  const Vn1Column g = geodesic_vn1_closed(x, b, t);
  DenseMatrix closed(n, 1);
  closed(0, 0) = g.g1;
  closed.bottomRows(n - 1) = sign * g.g3;
  return max_abs(closed - oracle);
}

double grassmann_trial(Rng& rng, double sign) {
  std::uniform_int_distribution<Index> pick_k(1, 4);
  const Index k = pick_k(rng);
  const DenseMatrix b = random_gaussian(k, k, FieldMode::complex, rng);
  const double t = uniform(rng, 0.0, 2.0 * M_PI);

  const GeodesicSpec spec(BlockVelocity::horizontal(b));
  const DenseMatrix oracle = normal_geodesic(spec, t).cols();

  const GrassmannBlocks g = grassmann_geodesic_2kk(b, t);
  DenseMatrix closed(2 * k, k);
  closed.topRows(k) = g.g1;
  closed.bottomRows(k) = sign * g.g3;
  return max_abs(closed - oracle);
}

}  // namespace

std::string_view to_string(ClosedFormSuite suite) {
  switch (suite) {
    case ClosedFormSuite::v21:
      return "v21";
    case ClosedFormSuite::vn1:
      return "vn1";
    case ClosedFormSuite::grassmann_2kk:
      return "grassmann_2kk";
  }
  return "unknown";
}

ClosedFormReport check_closed_forms(ClosedFormSuite suite, Index trials,
                                    std::uint64_t seed, bool flip_sign,
                                    double tolerance) {
  if (trials < 0) throw DomainError("trials must be non-negative");
  Rng rng(seed);
  const double sign = flip_sign ? -1.0 : 1.0;
  double worst = 0.0;
  for (Index i = 0; i < trials; ++i) {
    double err = 0.0;
    switch (suite) {
      case ClosedFormSuite::v21:
        err = v21_trial(rng, sign);
        break;
      case ClosedFormSuite::vn1:
        err = vn1_trial(rng, sign);
        break;
      case ClosedFormSuite::grassmann_2kk:
        err = grassmann_trial(rng, sign);
        break;
    }
    worst = std::max(worst, err);
  }
  return {suite, trials, worst, tolerance, worst < tolerance};
}

}  // namespace stiefel_sr
