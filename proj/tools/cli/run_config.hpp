#pragma once

// Run configuration of the command-line tool. Values come from built-in
// defaults, then an optional JSON config file, then command-line flags, each
// layer overriding the previous one.

#include <cstdint>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "stiefel_sr/cutlocus.hpp"
#include "stiefel_sr/tolerances.hpp"

namespace stiefel_sr::cli {

enum class OutputFormat { json, csv };

struct RunConfig {
  std::string command;
  Index n = 0;
  Index k = 1;
  FieldMode mode = FieldMode::complex;
  std::uint64_t seed = 1;
  Index samples = 0;  ///< 0: command default
  unsigned workers = 0;
  Tolerances tolerances;
  VelocityGrid grid;
  std::string output_path;  ///< empty: stdout
  OutputFormat format = OutputFormat::json;
};

/// Flag values as parsed; unset flags do not override.
struct FlagLayer {
  std::optional<Index> n;
  std::optional<Index> k;
  std::optional<std::string> mode;
  std::optional<std::uint64_t> seed;
  std::optional<Index> samples;
  std::optional<unsigned> workers;
  std::optional<std::string> grid;  ///< inline JSON or @path
  std::optional<std::string> output_path;
  std::optional<std::string> format;
  std::optional<std::string> config_path;
};

/// Built-in defaults. The worker count honours STIEFEL_SR_WORKERS.
RunConfig default_config(const std::string& command);

/// Applies a config file body. Unknown keys throw FormatError.
void apply_config_json(RunConfig& config, const nlohmann::json& j);

/// defaults < config file < flags. Throws FormatError / DomainError.
RunConfig resolve_config(const std::string& command, const FlagLayer& flags);

/// Reads `text` as JSON, or the file it names when it starts with '@'.
nlohmann::json read_json_argument(const std::string& text);

OutputFormat parse_format(const std::string& text);

nlohmann::json to_json(const RunConfig& config);

}  // namespace stiefel_sr::cli
