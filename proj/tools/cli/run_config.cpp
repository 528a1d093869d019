#include "cli/run_config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "stiefel_sr/errors.hpp"

namespace stiefel_sr::cli {

namespace {

unsigned workers_from_environment() {
  const char* value = std::getenv("STIEFEL_SR_WORKERS");
  if (value == nullptr || *value == '\0') return 0;
  char* end = nullptr;
  const long parsed = std::strtol(value, &end, 10);
  if (*end != '\0' || parsed < 0) {
    throw FormatError("STIEFEL_SR_WORKERS must be a non-negative integer");
  }
  return static_cast<unsigned>(parsed);
}

Tolerances tolerances_from_json(const nlohmann::json& j, Tolerances base) {
  if (!j.is_object()) throw FormatError("tolerances must be an object");
  for (const auto& [key, value] : j.items()) {
    const double v = value.get<double>();
    if (key == "sym") {
      base.sym = v;
    } else if (key == "unit") {
      base.unit = v;
    } else if (key == "eq") {
      base.eq = v;
    } else if (key == "hit") {
      base.hit = v;
    } else if (key == "velocity") {
      base.velocity = v;
    } else {
      throw FormatError("unknown tolerance '" + key + "'");
    }
  }
  return base;
}

}  // namespace

OutputFormat parse_format(const std::string& text) {
  if (text == "json") return OutputFormat::json;
  if (text == "csv") return OutputFormat::csv;
  throw FormatError("format must be 'json' or 'csv', got '" + text + "'");
}

RunConfig default_config(const std::string& command) {
  RunConfig config;
  config.command = command;
  config.workers = workers_from_environment();
  return config;
}

nlohmann::json read_json_argument(const std::string& text) {
  std::string body = text;
  if (!text.empty() && text.front() == '@') {
    std::ifstream in(text.substr(1));
    if (!in) throw FormatError("cannot read '" + text.substr(1) + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    body = buffer.str();
  }
  try {
    return nlohmann::json::parse(body);
  } catch (const nlohmann::json::parse_error& e) {
    throw FormatError(std::string("malformed JSON: ") + e.what());
  }
}

void apply_config_json(RunConfig& config, const nlohmann::json& j) {
  if (!j.is_object()) throw FormatError("config must be a JSON object");
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "command") {
        // Informational; the command line selects the command.
      } else if (key == "n") {
        config.n = value.get<Index>();
      } else if (key == "k") {
        config.k = value.get<Index>();
      } else if (key == "mode") {
        config.mode = parse_field_mode(value.get<std::string>());
      } else if (key == "seed") {
        config.seed = value.get<std::uint64_t>();
      } else if (key == "samples") {
        config.samples = value.get<Index>();
      } else if (key == "workers") {
        config.workers = value.get<unsigned>();
      } else if (key == "tolerances") {
        config.tolerances = tolerances_from_json(value, config.tolerances);
      } else if (key == "grid") {
        config.grid = velocity_grid_from_json(value);
      } else if (key == "output_path") {
        config.output_path = value.get<std::string>();
      } else if (key == "format") {
        config.format = parse_format(value.get<std::string>());
      } else {
        throw FormatError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("bad config value: ") + e.what());
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

RunConfig resolve_config(const std::string& command, const FlagLayer& flags) {
  RunConfig config = default_config(command);
  if (flags.config_path) {
    apply_config_json(config, read_json_argument("@" + *flags.config_path));
  }
  if (flags.n) config.n = *flags.n;
  if (flags.k) config.k = *flags.k;
  if (flags.mode) {
    try {
      config.mode = parse_field_mode(*flags.mode);
    } catch (const DomainError& e) {
      throw FormatError(e.what());
    }
  }
  if (flags.seed) config.seed = *flags.seed;
  if (flags.samples) config.samples = *flags.samples;
  if (flags.workers) config.workers = *flags.workers;
  if (flags.grid) config.grid = velocity_grid_from_json(read_json_argument(*flags.grid));
  if (flags.output_path) config.output_path = *flags.output_path;
  if (flags.format) config.format = parse_format(*flags.format);

  const Tolerances& t = config.tolerances;
  if (!(t.sym > 0 && t.unit > 0 && t.eq > 0 && t.hit > 0 && t.velocity > 0)) {
    throw FormatError("tolerances must be positive");
  }
  return config;
}

nlohmann::json to_json(const RunConfig& config) {
  const Tolerances& t = config.tolerances;
  return {{"command", config.command},
          {"n", config.n},
          {"k", config.k},
          {"mode", to_string(config.mode)},
          {"seed", config.seed},
          {"samples", config.samples},
          {"tolerances",
           {{"sym", t.sym},
            {"unit", t.unit},
            {"eq", t.eq},
            {"hit", t.hit},
            {"velocity", t.velocity}}},
          {"grid", to_json(config.grid)},
          {"format", config.format == OutputFormat::json ? "json" : "csv"}};
}

}  // namespace stiefel_sr::cli
