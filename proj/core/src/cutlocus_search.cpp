#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <thread>

#include "stiefel_sr/cutlocus.hpp"
#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/geodesic.hpp"

namespace stiefel_sr {
namespace {

using Params = Eigen::VectorXd;

// Runs body(i) for i in [0, count) on up to `workers` threads. Each index
// writes its own slot, so the result does not depend on scheduling.
void parallel_for(Index count, unsigned workers,
                  const std::function<void(Index)>& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<Index>(static_cast<Index>(workers), std::max<Index>(count, 1)));
  if (workers <= 1) {
    for (Index i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (Index i = next++; i < count; i = next++) body(i);
    });
  }
  for (std::thread& t : pool) t.join();
}

double radical_inverse(std::uint64_t index, std::uint64_t base) {
  double result = 0.0;
  double f = 1.0 / static_cast<double>(base);
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

std::uint64_t nth_prime(Index n) {
  std::uint64_t candidate = 1;
  Index found = -1;
  while (found < n) {
    ++candidate;
    bool prime = true;
    for (std::uint64_t d = 2; d * d <= candidate; ++d) {
      if (candidate % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) ++found;
  }
  return candidate;
}

// Maps parameter vectors (A coordinates, raw B entries, T) to velocities and
// endpoint residuals.
class Problem {
 public:
  Problem(const StiefelPoint& target, double b_norm)
      : target_(target), b_norm_(b_norm) {
    for (const BlockVelocity& e :
         vertical_basis(target.n(), target.k(), target.mode())) {
      a_basis_.push_back(e.a_block().body());
    }
    const Index block = target.k() * (target.n() - target.k());
    b_dim_ = complex() ? 2 * block : block;
  }

  bool complex() const { return target_.mode() == FieldMode::complex; }
  Index a_dim() const { return static_cast<Index>(a_basis_.size()); }
  Index b_dim() const { return b_dim_; }
  Index size() const { return a_dim() + b_dim() + 1; }

  DenseMatrix raw_b(const Params& x) const {
    const Index k = target_.k();
    const Index m = target_.n() - k;
    DenseMatrix b(k, m);
    Index at = a_dim();
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < m; ++j) {
        const double re = x(at++);
        const double im = complex() ? x(at++) : 0.0;
        b(i, j) = Complex(re, im);
      }
    }
    return b;
  }

  // A zero raw B stays zero and clears `valid`.
  BlockVelocity velocity(const Params& x, bool* valid = nullptr) const {
    const Index k = target_.k();
    DenseMatrix a = DenseMatrix::Zero(k, k);
    for (Index i = 0; i < a_dim(); ++i) a += x(i) * a_basis_[i];
    DenseMatrix b = raw_b(x);
    const double norm = b.norm();
    if (valid) *valid = norm > 0.0 && std::isfinite(norm);
    if (norm > 0.0) b *= b_norm_ / norm;
    return BlockVelocity(SkewHermitianMatrix(std::move(a), target_.mode()),
                         std::move(b));
  }

  Eigen::VectorXd flatten(const DenseMatrix& d) const {
    Eigen::VectorXd r(complex() ? 2 * d.size() : d.size());
    Index at = 0;
    for (Index j = 0; j < d.cols(); ++j) {
      for (Index i = 0; i < d.rows(); ++i) {
        r(at++) = d(i, j).real();
        if (complex()) r(at++) = d(i, j).imag();
      }
    }
    return r;
  }

  Eigen::VectorXd residual(const Params& x) const {
    bool valid = false;
    const BlockVelocity v = velocity(x, &valid);
    const Index rows = complex() ? 2 * target_.cols().size()
                                 : target_.cols().size();
    if (!valid) return Eigen::VectorXd::Constant(rows, 1e3);
    const GeodesicEvaluator eval{GeodesicSpec(v)};
    return flatten(eval.columns(x(size() - 1)) - target_.cols());
  }

  const StiefelPoint& target() const { return target_; }

 private:
  const StiefelPoint& target_;
  double b_norm_;
  std::vector<DenseMatrix> a_basis_;
  Index b_dim_ = 0;
};

// Parameter vectors of the velocity grid, T left at zero.
std::vector<Params> grid_velocities(const Problem& problem,
                                    const VelocityGrid& grid) {
  const Index da = problem.a_dim();
  const Index db = problem.b_dim();
  std::vector<Params> out;
  if (da <= 1 && db <= 2) {
    std::vector<double> a_values;
    if (da == 0) {
      a_values.push_back(0.0);
    } else {
      if (grid.a_count < 1) throw DomainError("empty grid: a_count < 1");
      for (Index i = 0; i < grid.a_count; ++i) {
        a_values.push_back(grid.a_count == 1
                               ? grid.a_min
                               : grid.a_min + (grid.a_max - grid.a_min) *
                                                  static_cast<double>(i) /
                                                  static_cast<double>(
                                                      grid.a_count - 1));
      }
    }
    std::vector<std::array<double, 2>> directions;
    if (db == 1) {
      directions = {{1.0, 0.0}, {-1.0, 0.0}};
    } else {
      if (grid.phase_count < 1) throw DomainError("empty grid: phase_count < 1");
      for (Index j = 0; j < grid.phase_count; ++j) {
        const double phi = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(grid.phase_count);
        directions.push_back({std::cos(phi), std::sin(phi)});
      }
    }
    for (double a : a_values) {
      for (const auto& d : directions) {
        Params x = Params::Zero(problem.size());
        if (da == 1) x(0) = a;
        for (Index i = 0; i < db; ++i) x(da + i) = d[static_cast<size_t>(i)];
        out.push_back(std::move(x));
      }
    }
    return out;
  }

  if (grid.samples < 1) throw DomainError("empty grid: samples < 1");
  const Index b_coords = db + (db % 2);
  std::vector<std::uint64_t> primes;
  for (Index d = 0; d < da + b_coords; ++d) primes.push_back(nth_prime(d));
  for (Index s = 0; s < grid.samples; ++s) {
    const auto h = [&](Index d) {
      return radical_inverse(static_cast<std::uint64_t>(s + 1),
                             primes[static_cast<size_t>(d)]);
    };
    Params x = Params::Zero(problem.size());
    for (Index i = 0; i < da; ++i) {
      x(i) = grid.a_min + (grid.a_max - grid.a_min) * h(i);
    }
    for (Index i = 0; i < db; i += 2) {
      const double u1 = std::max(h(da + i), 1e-12);
      const double u2 = h(da + i + 1);
      const double r = std::sqrt(-2.0 * std::log(u1));
      x(da + i) = r * std::cos(2.0 * std::numbers::pi * u2);
      if (i + 1 < db) x(da + i + 1) = r * std::sin(2.0 * std::numbers::pi * u2);
    }
    out.push_back(std::move(x));
  }
  return out;
}

// Levenberg-Marquardt on the endpoint residual with a forward-difference
// Jacobian.
Params refine(const Problem& problem, Params x) {
  Eigen::VectorXd r = problem.residual(x);
  double f = r.norm();
  double mu = 1e-3;
  const Index p = problem.size();
  for (int iter = 0; iter < 100 && f > 1e-14; ++iter) {
    Eigen::MatrixXd jac(r.size(), p);
    for (Index i = 0; i < p; ++i) {
      const double h = 1e-7 * std::max(1.0, std::abs(x(i)));
      Params xp = x;
      xp(i) += h;
      jac.col(i) = (problem.residual(xp) - r) / h;
    }
    const Eigen::MatrixXd normal = jac.transpose() * jac;
    const Eigen::VectorXd grad = jac.transpose() * r;
    bool improved = false;
    Params step;
    while (mu < 1e12) {
      Eigen::MatrixXd damped = normal;
      damped.diagonal().array() += mu * (normal.diagonal().array() + 1e-9);
      step = damped.ldlt().solve(-grad);
      const Params candidate = x + step;
      const Eigen::VectorXd rc = problem.residual(candidate);
      const double fc = rc.norm();
      if (std::isfinite(fc) && fc < f) {
        x = candidate;
        r = rc;
        f = fc;
        mu = std::max(mu / 5.0, 1e-12);
        improved = true;
        break;
      }
      mu *= 5.0;
    }
    if (!improved || step.norm() < 1e-15 * (1.0 + x.norm())) break;
  }
  return x;
}

bool velocity_less(const BlockVelocity& a, const BlockVelocity& b) {
  const DenseMatrix x = a.embed().body();
  const DenseMatrix y = b.embed().body();
  for (Index i = 0; i < x.size(); ++i) {
    const Complex p = x.data()[i];
    const Complex q = y.data()[i];
    if (p.real() != q.real()) return p.real() < q.real();
    if (p.imag() != q.imag()) return p.imag() < q.imag();
  }
  return false;
}

}  // namespace

MinimizerReport search_minimizers(const StiefelPoint& target,
                                  const SearchOptions& options) {
  const VelocityGrid& grid = options.grid;
  if (options.eps_hit < 10.0 * tolerances().eq * (1.0 - 1e-12)) {
    throw DomainError("eps_hit must be at least 10 tau_eq");
  }
  if (grid.t_steps < 2) throw DomainError("empty grid: t_steps < 2");
  if (!(grid.b_norm > 0.0) || !std::isfinite(grid.b_norm)) {
    throw DomainError("grid b_norm must be positive");
  }
  if (!(grid.a_max >= grid.a_min) || !std::isfinite(grid.a_min) ||
      !std::isfinite(grid.a_max) || !(grid.t_max >= 0.0)) {
    throw DomainError("grid ranges must be finite and ordered");
  }

  MinimizerReport report{classify(target), grid, options.eps_hit,
                         options.eps_v, {}, 0, 0.0, 0};
  const Index n = target.n();
  const Index k = target.k();
  const FieldMode mode = target.mode();

  const double identity_gap =
      class_distance(target, StiefelPoint::identity(n, k, mode));
  if (identity_gap <= options.eps_hit) {
    report.arrivals.push_back(
        {BlockVelocity::zero(n, k, mode), 0.0, 0.0, identity_gap});
    report.clusters = 1;
    return report;
  }

  const Problem problem(target, grid.b_norm);
  const std::vector<Params> velocities = grid_velocities(problem, grid);
  const double t_max = grid.t_max > 0.0
                           ? grid.t_max
                           : 2.0 * std::numbers::pi *
                                 std::sqrt(static_cast<double>(k)) / grid.b_norm;
  const Index steps = grid.t_steps;
  const Index t_index = problem.size() - 1;

  // Grid pass: at most two seeds per velocity, at local minima in t.
  std::vector<std::vector<Params>> seeds(velocities.size());
  parallel_for(static_cast<Index>(velocities.size()), options.workers,
               [&](Index s) {
                 const Params& x = velocities[static_cast<size_t>(s)];
                 const GeodesicEvaluator eval{GeodesicSpec(problem.velocity(x))};
                 std::vector<double> err(static_cast<size_t>(steps + 1));
                 for (Index i = 0; i <= steps; ++i) {
                   const double t = t_max * static_cast<double>(i) /
                                    static_cast<double>(steps);
                   err[static_cast<size_t>(i)] =
                       (eval.columns(t) - target.cols()).norm();
                 }
                 std::vector<std::pair<double, Index>> minima;
                 for (Index i = 0; i <= steps; ++i) {
                   const double e = err[static_cast<size_t>(i)];
                   const bool left = i == 0 || e <= err[static_cast<size_t>(i - 1)];
                   const bool right =
                       i == steps || e <= err[static_cast<size_t>(i + 1)];
                   if (left && right && e < options.seed_tol) {
                     minima.emplace_back(e, i);
                   }
                 }
                 std::sort(minima.begin(), minima.end());
                 if (minima.size() > 2) minima.resize(2);
                 for (const auto& [e, i] : minima) {
                   Params seed = x;
                   seed(t_index) = t_max * static_cast<double>(i) /
                                   static_cast<double>(steps);
                   seeds[static_cast<size_t>(s)].push_back(std::move(seed));
                 }
               });

  std::vector<Params> flat;
  for (auto& list : seeds) {
    for (Params& p : list) flat.push_back(std::move(p));
  }
  report.seeds = static_cast<Index>(flat.size());

  // Refinement.
  std::vector<std::optional<Arrival>> refined(flat.size());
  parallel_for(static_cast<Index>(flat.size()), options.workers, [&](Index s) {
    Params x = refine(problem, flat[static_cast<size_t>(s)]);
    if (x(t_index) < 0.0) x = -x;
    bool valid = false;
    const BlockVelocity v = problem.velocity(x, &valid);
    if (!valid) return;
    const double error = problem.residual(x).norm();
    if (!(error <= options.eps_hit)) return;
    refined[static_cast<size_t>(s)] =
        Arrival{v, x(t_index), length(v, x(t_index)), error};
  });

  std::vector<Arrival> arrivals;
  for (auto& a : refined) {
    if (a) arrivals.push_back(std::move(*a));
  }
  if (arrivals.empty()) return report;

  double min_length = arrivals.front().length;
  for (const Arrival& a : arrivals) min_length = std::min(min_length, a.length);
  std::erase_if(arrivals, [&](const Arrival& a) {
    return a.length > min_length * (1.0 + 1e-6);
  });
  std::sort(arrivals.begin(), arrivals.end(),
            [](const Arrival& a, const Arrival& b) {
              if (a.length != b.length) return a.length < b.length;
              if (a.time != b.time) return a.time < b.time;
              return velocity_less(a.velocity, b.velocity);
            });

  std::vector<DenseMatrix> representatives;
  for (const Arrival& a : arrivals) {
    const DenseMatrix body = a.velocity.embed().body();
    const bool known = std::any_of(
        representatives.begin(), representatives.end(),
        [&](const DenseMatrix& r) { return (r - body).norm() <= options.eps_v; });
    if (!known) representatives.push_back(body);
  }
  report.min_length = min_length;
  report.clusters = static_cast<Index>(representatives.size());
  report.arrivals = std::move(arrivals);
  return report;
}

}  // namespace stiefel_sr
