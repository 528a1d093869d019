#pragma once

// Cut-locus experiments on V_{n,k}: classification of targets, a grid search
// for minimizing normal geodesics, and the verification suites for the
// block-diagonal set L, the antidiagonal points of V_{2k,k}, the uniqueness
// arguments on V_{n,1} and the real cut point of V_{n,1}.
//
// A point is counted as a cut point when it is reached at minimal length by
// at least two horizontal geodesics whose velocities differ by more than
// eps_v. For k >= 2 only normal geodesics are searched.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "stiefel_sr/homspace.hpp"
#include "stiefel_sr/tolerances.hpp"

namespace stiefel_sr {

enum class TargetKind { block_diagonal_L, antidiagonal, generic };

std::string_view to_string(TargetKind kind);

struct TargetClass {
  TargetKind kind;
  StiefelPoint point;
  FieldMode mode;
};

/// Lower block zero to tau_eq and p not the identity class.
bool in_L(const StiefelPoint& p);

/// n = 2k only: upper block zero to tau_eq, lower block unitary.
bool is_antidiagonal(const StiefelPoint& p);

TargetClass classify(const StiefelPoint& p);

// ---------------------------------------------------------------------------
// Minimizer search

/// Velocities are parametrised by A (coordinates in the elementary basis of
/// u(k) or so(k)) and B with |B|_F = b_norm fixed, so that the travel time T
/// alone sets the length.
///
/// When A has at most one real coordinate and B at most two (V_{2,1},
/// real V_{3,1}, real V_{2,1}), the grid is a product of a_count values of
/// A in [a_min, a_max] and phase_count directions of B on its circle.
/// Otherwise `samples` quasi-random velocities are drawn (Halton sequence,
/// A uniform in the box, B normalised Gaussian).
struct VelocityGrid {
  double a_min = -3.0;
  double a_max = 3.0;
  Index a_count = 64;
  Index phase_count = 64;
  Index samples = 10000;
  double b_norm = 1.0;
  /// 0 selects 2 pi sqrt(k) / b_norm.
  double t_max = 0.0;
  Index t_steps = 128;
};

nlohmann::json to_json(const VelocityGrid& grid);
/// Missing keys keep their defaults. Throws FormatError.
VelocityGrid velocity_grid_from_json(const nlohmann::json& j);

struct SearchOptions {
  VelocityGrid grid;
  double eps_hit = tolerances().hit;
  double eps_v = tolerances().velocity;
  /// Grid points whose endpoint error is a local minimum in t and below this
  /// value are refined.
  double seed_tol = 0.5;
  /// 0 selects std::thread::hardware_concurrency().
  unsigned workers = 0;
};

struct Arrival {
  BlockVelocity velocity;
  double time;
  double length;
  double endpoint_error;
};

struct MinimizerReport {
  TargetClass target;
  VelocityGrid grid;
  double eps_hit;
  double eps_v;
  /// Refined arrivals within (1 + 1e-6) of the minimal length, sorted by
  /// (length, T, velocity entries).
  std::vector<Arrival> arrivals;
  Index clusters = 0;
  double min_length = 0.0;
  Index seeds = 0;  ///< grid points handed to the refinement

  /// "cut locus" for k = 1, "normal cut locus" for k >= 2.
  std::string label() const;
};

/// Grid evaluation, Levenberg-Marquardt refinement of the endpoint residual
/// over (A, B, T), then clustering of the minimal arrivals by velocity
/// distance. The identity class is answered directly (zero velocity, T = 0).
/// Deterministic for a fixed grid, independent of the worker count.
/// Throws DomainError for an empty grid or eps_hit < 10 tau_eq.
MinimizerReport search_minimizers(const StiefelPoint& target,
                                  const SearchOptions& options = {});

/// {target, grid, arrivals[], clusters, min_length, pass, label}.
nlohmann::json to_json(const MinimizerReport& report);

// ---------------------------------------------------------------------------
// Verification suites

struct CheckSummary {
  std::string name;
  Index samples = 0;
  Index passed = 0;
  Index skipped = 0;
  double max_error = 0.0;
  bool pass = false;
  nlohmann::json details = nlohmann::json::object();
};

nlohmann::json to_json(const CheckSummary& summary);

/// First t in (0, t_max] at which the lower block of gamma_v vanishes:
/// the first local minimum of its norm on a grid of `steps` points, refined
/// by 60 bisection steps on the sign of the derivative and accepted below
/// tau_eq. Returns a negative value when there is no hit.
double first_block_diagonal_time(const BlockVelocity& v, double t_max,
                                 Index steps = 512);

struct MirrorSample {
  bool hit = false;
  double time = 0.0;
  double endpoint_gap = 0.0;         ///< gamma_v(T) vs gamma_{v*}(T)
  double twisted_endpoint_gap = 0.0; ///< same with v* = mirror(v, U)
  double length_gap = 0.0;
  double velocity_gap = 0.0;         ///< |v - v*|_F
};

/// Runs the mirror comparison for one velocity; `u` is the U(n-k) element of
/// the twisted variant.
MirrorSample check_mirror_sample(const BlockVelocity& v,
                                 const UnitaryMatrix& u);

/// Samples velocities whose geodesics reach L and checks that the mirrored
/// velocities (A, -B) and (A, -B U) reach the same point with the same length.
CheckSummary verify_L_subset_cutlocus(Index n, Index k, Index samples,
                                      std::uint64_t seed,
                                      FieldMode mode = FieldMode::complex);

/// Antidiagonal points of V_{2k,k}: exact arrival at pi sqrt(k)/2 for
/// unitary directions, later first zero for the others, and injectivity of
/// B -> gamma3(T0) = -sqrt(k) B^*.
CheckSummary verify_antidiagonal_not_cut(Index k, Index samples,
                                         std::uint64_t seed,
                                         FieldMode mode = FieldMode::complex);

/// The analytic facts behind the uniqueness cases on V_{n,1}: sin(x)/x is
/// injective on (0, pi), tan(a)/a != tan(b)/b for 0 < a < b < pi, and gamma3
/// determines B once x and |B| are fixed.
CheckSummary uniqueness_case_checks(Index n, Index trials, std::uint64_t seed);

/// The real Stiefel point with first column (-1, 0, ..., 0)^T.
/// Throws DomainError for n < 2.
StiefelPoint real_vn1_cutpoint(Index n);

}  // namespace stiefel_sr
