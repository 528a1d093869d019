#include <algorithm>
#include <cmath>
#include <numbers>

#include "stiefel_sr/cutlocus.hpp"
#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/geodesic.hpp"
#include "stiefel_sr/random.hpp"

namespace stiefel_sr {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

double operator_norm(const DenseMatrix& m) {
  Eigen::JacobiSVD<DenseMatrix> svd(m);
  return svd.singularValues().size() == 0 ? 0.0 : svd.singularValues()(0);
}

// A velocity whose geodesic reaches L. For k <= n-k, B = s W with W having
// orthonormal rows and A = U diag(+-i a) U^*, so every 2-plane
// span(u_j, W^* u_j) carries a copy of the V_{2,1} geodesic with the same
// return time 2 pi / sqrt(a^2 + 4 s^2). For k > n-k, A = 0 and
// B^* B = s^2 I, returning at pi / s.
BlockVelocity sample_L_velocity(Index n, Index k, FieldMode mode, Rng& rng) {
  const Index m = n - k;
  const double s = uniform(rng, 0.5, 1.5);
  if (k > m) {
    DenseMatrix b = s * random_unitary(k, mode, rng).body().leftCols(m);
    return BlockVelocity::horizontal(std::move(b), mode);
  }
  DenseMatrix b = s * random_unitary(m, mode, rng).body().topRows(k);
  const double a = uniform(rng, -2.0, 2.0);
  DenseMatrix d = DenseMatrix::Zero(k, k);
  if (mode == FieldMode::complex) {
    for (Index j = 0; j < k; ++j) {
      d(j, j) = Complex(0.0, uniform(rng, 0.0, 1.0) < 0.5 ? -a : a);
    }
  } else if (k % 2 == 0) {
    for (Index j = 0; j < k; j += 2) {
      d(j, j + 1) = a;
      d(j + 1, j) = -a;
    }
  }
  const DenseMatrix u = random_unitary(k, mode, rng).body();
  return BlockVelocity(SkewHermitianMatrix(u * d * u.adjoint(), mode),
                       std::move(b));
}

}  // namespace

double first_block_diagonal_time(const BlockVelocity& v, double t_max,
                                 Index steps) {
  if (!(t_max > 0.0) || steps < 2) {
    throw DomainError("hit search needs t_max > 0 and at least 2 steps");
  }
  const Index k = v.k();
  const Index m = v.n() - k;
  const GeodesicEvaluator eval{GeodesicSpec(v)};
  const auto lower_norm = [&](double t) {
    return eval.columns(t).bottomRows(m).norm();
  };
  // d/dt |M|^2 = 2 Re tr(M^* M').
  const auto slope = [&](double t) {
    const DenseMatrix lower = eval.columns(t).bottomRows(m);
    const DenseMatrix rate = eval.ambient_velocity(t).bottomRows(m);
    return 2.0 * (lower.adjoint() * rate).trace().real();
  };

  std::vector<double> norms(static_cast<size_t>(steps + 1));
  const auto time = [&](Index i) {
    return t_max * static_cast<double>(i) / static_cast<double>(steps);
  };
  for (Index i = 0; i <= steps; ++i) norms[static_cast<size_t>(i)] = lower_norm(time(i));

  for (Index i = 1; i < steps; ++i) {
    const double here = norms[static_cast<size_t>(i)];
    if (here > norms[static_cast<size_t>(i - 1)] ||
        here > norms[static_cast<size_t>(i + 1)]) {
      continue;
    }
    double lo = time(i - 1);
    double hi = time(i + 1);
    for (int b = 0; b < 60; ++b) {
      const double mid = 0.5 * (lo + hi);
      if (slope(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double t = 0.5 * (lo + hi);
    if (lower_norm(t) < tolerances().eq) return t;
  }
  return -1.0;
}

MirrorSample check_mirror_sample(const BlockVelocity& v,
                                 const UnitaryMatrix& u) {
  MirrorSample out;
  const double b2 = v.b_block().squaredNorm();
  if (b2 == 0.0) return out;
  const double t_max =
      2.0 * kPi / std::sqrt(b2 / static_cast<double>(v.k()));
  const double t = first_block_diagonal_time(v, t_max);
  if (t < 0.0) return out;
  out.hit = true;
  out.time = t;

  const Index m = v.n() - v.k();
  const BlockVelocity mirrored =
      mirror_velocity(v, UnitaryMatrix::identity(m, v.mode()));
  const BlockVelocity twisted = mirror_velocity(v, u);
  const DenseMatrix end = GeodesicEvaluator(GeodesicSpec(v)).columns(t);
  out.endpoint_gap =
      max_abs(end - GeodesicEvaluator(GeodesicSpec(mirrored)).columns(t));
  out.twisted_endpoint_gap =
      max_abs(end - GeodesicEvaluator(GeodesicSpec(twisted)).columns(t));
  out.length_gap = std::abs(length(v, t) - length(mirrored, t));
  out.velocity_gap = (v.embed().body() - mirrored.embed().body()).norm();
  return out;
}

CheckSummary verify_L_subset_cutlocus(Index n, Index k, Index samples,
                                      std::uint64_t seed, FieldMode mode) {
  if (k < 1 || k >= n) throw DomainError("verify-L needs 1 <= k < n");
  CheckSummary summary;
  summary.name = "verify-L";
  summary.samples = samples;
  Rng rng(seed);
  const double eps_hit = tolerances().hit;
  double t_min = 0.0;
  double t_max = 0.0;
  Index misses = 0;
  for (Index s = 0; s < samples; ++s) {
    const BlockVelocity v = sample_L_velocity(n, k, mode, rng);
    const UnitaryMatrix u = random_unitary(n - k, mode, rng);
    const MirrorSample r = check_mirror_sample(v, u);
    if (!r.hit) {
      ++misses;
      continue;
    }
    t_min = s == 0 ? r.time : std::min(t_min, r.time);
    t_max = std::max(t_max, r.time);
    summary.max_error = std::max(
        {summary.max_error, r.endpoint_gap, r.twisted_endpoint_gap, r.length_gap});
    if (r.endpoint_gap <= eps_hit && r.twisted_endpoint_gap <= eps_hit &&
        r.length_gap <= 1e-10 && r.velocity_gap > tolerances().velocity) {
      ++summary.passed;
    }
  }
  summary.pass = summary.passed == samples;
  summary.details = {{"n", n},
                     {"k", k},
                     {"mode", to_string(mode)},
                     {"seed", seed},
                     {"misses", misses},
                     {"hit_time_min", t_min},
                     {"hit_time_max", t_max},
                     {"label", k >= 2 ? "normal cut locus" : "cut locus"}};
  return summary;
}

CheckSummary verify_antidiagonal_not_cut(Index k, Index samples,
                                         std::uint64_t seed, FieldMode mode) {
  if (k < 1) throw DomainError("verify-antidiagonal needs k >= 1");
  CheckSummary summary;
  summary.name = "verify-antidiagonal";
  summary.samples = samples;
  Rng rng(seed);
  const double root_k = std::sqrt(static_cast<double>(k));
  const double t0 = kPi * root_k / 2.0;

  // (a) unitary directions reach the antidiagonal set at T0 exactly.
  double err_a = 0.0;
  double err_roundtrip = 0.0;
  double min_separation = std::numeric_limits<double>::infinity();
  Index pass_a = 0;
  DenseMatrix previous_b;
  DenseMatrix previous_end;
  for (Index s = 0; s < samples; ++s) {
    const DenseMatrix b = random_unitary(k, mode, rng).body() / root_k;
    const GrassmannBlocks g = grassmann_geodesic_2kk(b, t0);
    const DenseMatrix expected = -root_k * b.adjoint();
    const StiefelPoint generic =
        normal_geodesic(GeodesicSpec(BlockVelocity::horizontal(b, mode)), t0);
    const double e = std::max({max_abs(g.g1), max_abs(g.g3 - expected),
                               max_abs(generic.upper_block() - g.g1),
                               max_abs(generic.lower_block() - g.g3)});
    bool ok = e <= 1e-9 && is_antidiagonal(generic);
    for (int i = 1; i < 64 && ok; ++i) {
      const double t = t0 * static_cast<double>(i) / 64.0;
      ok = operator_norm(grassmann_geodesic_2kk(b, t).g1) > 1e-9;
    }
    err_a = std::max(err_a, e);

    // (c) B is recovered from the endpoint, and distinct B stay distinct.
    const DenseMatrix recovered = -g.g3.adjoint() / root_k;
    const double rt = max_abs(recovered - b);
    err_roundtrip = std::max(err_roundtrip, rt);
    ok = ok && rt <= 1e-10;
    if (s > 0 && max_abs(b - previous_b) > 1e-6) {
      const double sep = max_abs(g.g3 - previous_end);
      min_separation = std::min(min_separation, sep);
      ok = ok && sep > 1e-6;
    }
    previous_b = b;
    previous_end = g.g3;
    if (ok) ++pass_a;
  }

  // (b) non-unitary invertible directions with tr(B B^*) = 1 vanish later.
  Index tried_b = 0;
  Index pass_b = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  if (k >= 2) {
    for (Index s = 0; s < samples; ++s) {
      Eigen::VectorXd sigma(k);
      for (Index j = 0; j < k; ++j) sigma(j) = uniform(rng, 0.2, 1.0);
      sigma /= sigma.norm();
      const double sigma_min = sigma.minCoeff();
      if (sigma_min * root_k > 0.98) continue;
      ++tried_b;
      const DenseMatrix u = random_unitary(k, mode, rng).body();
      const DenseMatrix w = random_unitary(k, mode, rng).body();
      const DenseMatrix b =
          u * sigma.cast<Complex>().asDiagonal() * w.adjoint();
      // Whole-block zero needs cos(t sigma_j) = 0 for every j, so it cannot
      // come before pi / (2 sigma_min).
      const double bound = kPi / (2.0 * sigma_min);
      bool ok = bound > t0;
      double smallest = std::numeric_limits<double>::infinity();
      for (int i = 0; i <= 256 && ok; ++i) {
        const double t = t0 * static_cast<double>(i) / 256.0;
        smallest = std::min(smallest, operator_norm(grassmann_geodesic_2kk(b, t).g1));
      }
      ok = ok && smallest > 1e-6;
      min_margin = std::min(min_margin, bound - t0);
      if (ok) ++pass_b;
    }
  }

  summary.passed = pass_a;
  summary.skipped = samples - tried_b;
  summary.max_error = std::max(err_a, err_roundtrip);
  summary.pass = pass_a == samples && pass_b == tried_b;
  summary.details = {
      {"k", k},
      {"n", 2 * k},
      {"mode", to_string(mode)},
      {"seed", seed},
      {"T0", t0},
      {"unitary_max_error", err_a},
      {"roundtrip_max_error", err_roundtrip},
      {"min_endpoint_separation",
       std::isfinite(min_separation) ? min_separation : 0.0},
      {"non_unitary_tried", tried_b},
      {"non_unitary_passed", pass_b},
      {"min_first_zero_margin", std::isfinite(min_margin) ? min_margin : 0.0}};
  return summary;
}

CheckSummary uniqueness_case_checks(Index n, Index trials, std::uint64_t seed) {
  if (n < 2) throw DomainError("uniqueness checks need n >= 2");
  CheckSummary summary;
  summary.name = "uniqueness";
  summary.samples = trials;
  Rng rng(seed);

  // (i) sin(x)/x strictly decreasing on the grid 0.01, 0.0101, ..., 3.13.
  bool sinc_ok = true;
  double prev = std::sin(0.01) / 0.01;
  for (int i = 1; 0.01 + i * 1e-4 <= 3.13 + 1e-12; ++i) {
    const double x = 0.01 + i * 1e-4;
    const double f = std::sin(x) / x;
    sinc_ok = sinc_ok && f < prev;
    prev = f;
  }

  // (ii) tan(a)/a != tan(b)/b for 0 < a < b < pi.
  const auto tanc = [](double x) { return std::tan(x) / x; };
  Index tan_ok = 0;
  Index tan_tried = 0;
  for (Index s = 0; s < trials; ++s) {
    const double lambda = uniform(rng, 0.05, 3.0);
    const double y = uniform(rng, 0.05, 2.0);
    const double b = uniform(rng, 0.05, kPi - 0.05);
    const double a = b * lambda / std::sqrt(lambda * lambda + 4.0 * y * y);
    const double ta = tanc(a);
    const double tb = tanc(b);
    if (!std::isfinite(ta) || !std::isfinite(tb)) continue;
    ++tan_tried;
    if (std::abs(ta - tb) > 1e-12) ++tan_ok;
  }

  // (iii) gamma3 at a point off L determines B once x and |B| are known.
  double inversion_error = 0.0;
  Index inversion_ok = 0;
  Index inversion_tried = 0;
  for (Index s = 0; s < trials; ++s) {
    const double x = uniform(rng, -2.0, 2.0);
    DenseMatrix b = random_gaussian(1, n - 1, FieldMode::complex, rng);
    b *= uniform(rng, 0.5, 1.5) / b.norm();
    const double root = std::sqrt(x * x + 4.0 * b.squaredNorm());
    const double t = uniform(rng, 0.0, 2.0 * kPi / root);
    const Complex turn = std::polar(1.0, t * root) - 1.0;
    if (std::abs(turn) < 0.1) continue;
    ++inversion_tried;
    DenseMatrix a(1, 1);
    a(0, 0) = Complex(0.0, x);
    const BlockVelocity v(SkewHermitianMatrix(a), b);
    const DenseMatrix g3 = normal_geodesic(GeodesicSpec(v), t).lower_block();
    const Complex factor = std::polar(1.0, -0.5 * t * (root + x)) * turn;
    const DenseMatrix recovered = (-g3 * kI * root / factor).adjoint();
    const double e = max_abs(recovered - b);
    inversion_error = std::max(inversion_error, e);
    if (e <= 1e-10) ++inversion_ok;
  }

  summary.passed = tan_ok + inversion_ok;
  summary.skipped = 2 * trials - tan_tried - inversion_tried;
  summary.max_error = inversion_error;
  summary.pass = sinc_ok && tan_ok == tan_tried && inversion_ok == inversion_tried &&
                 std::abs(tanc(0.5) - tanc(1.0)) > 0.4;
  summary.details = {{"n", n},
                     {"seed", seed},
                     {"sinc_decreasing", sinc_ok},
                     {"tan_tried", tan_tried},
                     {"tan_distinct", tan_ok},
                     {"tan_a_0_5", tanc(0.5)},
                     {"tan_b_1_0", tanc(1.0)},
                     {"inversion_tried", inversion_tried},
                     {"inversion_passed", inversion_ok},
                     {"inversion_max_error", inversion_error}};
  return summary;
}

}  // namespace stiefel_sr
