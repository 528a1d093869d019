#pragma once

// Command implementations. Each returns the process exit code:
// 0 success, 1 verification failure. Usage and format problems surface as
// FormatError / DomainError / DimensionMismatch, numerical invariant
// violations as InvariantViolation; the front end maps them to 2 and 3.

#include <optional>
#include <ostream>
#include <string>

#include "cli/run_config.hpp"

namespace stiefel_sr::cli {

struct GeodesicEvalArgs {
  std::string velocity;  ///< JSON, @path or "zero"
  std::optional<Index> k;
  double t0 = 0.0;
  double t1 = 1.0;
};

int cmd_geodesic_eval(const RunConfig& config, const GeodesicEvalArgs& args,
                      std::ostream& out, std::ostream& err);

struct ClosedFormArgs {
  std::string suite = "all";
  bool inject_sign_flip = false;
};

int cmd_verify_closed_forms(const RunConfig& config, const ClosedFormArgs& args,
                            std::ostream& out, std::ostream& err);

int cmd_bracket(const RunConfig& config, std::ostream& out);

/// `target` is a Stiefel point as JSON / @path, or one of the presets
/// "identity", "antipodal" (first column -e1), "antidiagonal" (n = 2k).
int cmd_cutlocus_search(const RunConfig& config, const std::string& target,
                        std::ostream& out);
int cmd_verify_L(const RunConfig& config, std::ostream& out);
int cmd_verify_antidiagonal(const RunConfig& config, std::ostream& out);
int cmd_uniqueness(const RunConfig& config, std::ostream& out);
int cmd_real_cutpoint(const RunConfig& config, std::ostream& out);

/// Writes `text` to config.output_path, or to `out` when no path is set.
void emit(const RunConfig& config, const std::string& text, std::ostream& out);

}  // namespace stiefel_sr::cli
