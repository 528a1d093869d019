#include "stiefel_sr/cutlocus.hpp"

#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/serialization.hpp"

namespace stiefel_sr {

std::string_view to_string(TargetKind kind) {
  switch (kind) {
    case TargetKind::block_diagonal_L:
      return "block_diagonal_L";
    case TargetKind::antidiagonal:
      return "antidiagonal";
    case TargetKind::generic:
      return "generic";
  }
  return "generic";
}

bool in_L(const StiefelPoint& p) {
  const double tol = tolerances().eq;
  if (max_abs(p.lower_block()) > tol) return false;
  return !same_class(p, StiefelPoint::identity(p.n(), p.k(), p.mode()), tol);
}

bool is_antidiagonal(const StiefelPoint& p) {
  if (p.n() != 2 * p.k()) return false;
  const double tol = tolerances().eq;
  if (max_abs(p.upper_block()) > tol) return false;
  const DenseMatrix lower = p.lower_block();
  const DenseMatrix gram = lower.adjoint() * lower;
  return max_abs(gram - DenseMatrix::Identity(p.k(), p.k())) <= tol;
}

TargetClass classify(const StiefelPoint& p) {
  TargetKind kind = TargetKind::generic;
  if (in_L(p)) {
    kind = TargetKind::block_diagonal_L;
  } else if (is_antidiagonal(p)) {
    kind = TargetKind::antidiagonal;
  }
  return {kind, p, p.mode()};
}

std::string MinimizerReport::label() const {
  return target.point.k() >= 2 ? "normal cut locus" : "cut locus";
}

nlohmann::json to_json(const VelocityGrid& grid) {
  return {{"a_min", grid.a_min},         {"a_max", grid.a_max},
          {"a_count", grid.a_count},     {"phase_count", grid.phase_count},
          {"samples", grid.samples},     {"b_norm", grid.b_norm},
          {"t_max", grid.t_max},         {"t_steps", grid.t_steps}};
}

VelocityGrid velocity_grid_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("grid must be a JSON object");
  VelocityGrid grid;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "a_min") {
        grid.a_min = value.get<double>();
      } else if (key == "a_max") {
        grid.a_max = value.get<double>();
      } else if (key == "a_count") {
        grid.a_count = value.get<Index>();
      } else if (key == "phase_count") {
        grid.phase_count = value.get<Index>();
      } else if (key == "samples") {
        grid.samples = value.get<Index>();
      } else if (key == "b_norm") {
        grid.b_norm = value.get<double>();
      } else if (key == "t_max") {
        grid.t_max = value.get<double>();
      } else if (key == "t_steps") {
        grid.t_steps = value.get<Index>();
      } else {
        throw FormatError("unknown grid key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad grid value: ") + e.what());
  }
  return grid;
}

nlohmann::json to_json(const MinimizerReport& report) {
  nlohmann::json arrivals = nlohmann::json::array();
  for (const Arrival& a : report.arrivals) {
    arrivals.push_back({{"velocity", to_json(a.velocity)},
                        {"T", a.time},
                        {"length", a.length},
                        {"endpoint_error", a.endpoint_error}});
  }
  return {{"target",
           {{"kind", to_string(report.target.kind)},
            {"point", to_json(report.target.point)}}},
          {"grid", to_json(report.grid)},
          {"eps_hit", report.eps_hit},
          {"eps_v", report.eps_v},
          {"seeds", report.seeds},
          {"arrivals", std::move(arrivals)},
          {"clusters", report.clusters},
          {"min_length", report.min_length},
          {"label", report.label()},
          {"pass", !report.arrivals.empty()}};
}

nlohmann::json to_json(const CheckSummary& summary) {
  return {{"name", summary.name},         {"samples", summary.samples},
          {"passed", summary.passed},     {"skipped", summary.skipped},
          {"max_error", summary.max_error}, {"pass", summary.pass},
          {"details", summary.details}};
}

StiefelPoint real_vn1_cutpoint(Index n) {
  if (n < 2) throw DomainError("real V_{n,1} cut point needs n >= 2");
  DenseMatrix cols = DenseMatrix::Zero(n, 1);
  cols(0, 0) = -1.0;
  return StiefelPoint(std::move(cols), FieldMode::real);
}

}  // namespace stiefel_sr
