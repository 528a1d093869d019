#include "cli/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "stiefel_sr/distribution.hpp"
#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/geodesic.hpp"
#include "stiefel_sr/serialization.hpp"

namespace stiefel_sr::cli {
namespace {

std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

void require_json(const RunConfig& config) {
  if (config.format != OutputFormat::json) {
    throw FormatError("command '" + config.command + "' writes JSON only");
  }
}

Index samples_or(const RunConfig& config, Index fallback) {
  if (config.samples < 0) throw DomainError("--samples must be non-negative");
  return config.samples > 0 ? config.samples : fallback;
}

SearchOptions search_options(const RunConfig& config) {
  SearchOptions options;
  options.grid = config.grid;
  options.eps_hit = config.tolerances.hit;
  options.eps_v = config.tolerances.velocity;
  options.workers = config.workers;
  return options;
}

StiefelPoint preset_or_json(const RunConfig& config, const std::string& text) {
  const Index n = config.n;
  const Index k = config.k;
  const auto check = [&] {
    if (n < 2 || k < 1 || k >= n) {
      throw DomainError("preset targets need --n >= 2 and 1 <= --k < n");
    }
  };
  if (text == "identity") {
    check();
    return StiefelPoint::identity(n, k, config.mode);
  }
  if (text == "antipodal") {
    check();
    DenseMatrix cols = DenseMatrix::Identity(n, k);
    cols(0, 0) = -1.0;
    return StiefelPoint(std::move(cols), config.mode);
  }
  if (text == "antidiagonal") {
    check();
    if (n != 2 * k) throw DomainError("antidiagonal preset needs n = 2k");
    DenseMatrix cols = DenseMatrix::Zero(n, k);
    cols.bottomRows(k) = DenseMatrix::Identity(k, k);
    return StiefelPoint(std::move(cols), config.mode);
  }
  return stiefel_point_from_json(read_json_argument(text));
}

int verdict(const CheckSummary& summary, const RunConfig& config,
            std::ostream& out) {
  nlohmann::json j = to_json(summary);
  j["config"] = to_json(config);
  emit(config, dump(j), out);
  return summary.pass ? 0 : 1;
}

}  // namespace

void emit(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.output_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.output_path, std::ios::binary);
  if (!file) throw FormatError("cannot write '" + config.output_path + "'");
  file << text;
}

int cmd_geodesic_eval(const RunConfig& config, const GeodesicEvalArgs& args,
                      std::ostream& out, std::ostream&) {
  if (config.n < 1) throw FormatError("geodesic eval needs --n");
  if (args.velocity.empty()) throw FormatError("geodesic eval needs --velocity");
  const Index count = samples_or(config, 10);
  std::optional<BlockVelocity> v;
  if (args.velocity == "zero") {
    v = BlockVelocity::zero(config.n, args.k.value_or(config.k), config.mode);
  } else {
    v = block_velocity_from_json(read_json_argument(args.velocity));
  }
  if (v->n() != config.n) {
    throw DimensionMismatch("velocity has n = " + std::to_string(v->n()) +
                            ", --n is " + std::to_string(config.n));
  }
  if (args.k && *args.k != v->k()) {
    throw DimensionMismatch("velocity has k = " + std::to_string(v->k()) +
                            ", --k is " + std::to_string(*args.k));
  }
  const std::vector<GeodesicSample> samples =
      sample_geodesic(GeodesicSpec(*v), args.t0, args.t1, count);
  if (config.format == OutputFormat::csv) {
    std::ostringstream text;
    write_csv(text, samples);
    emit(config, text.str(), out);
    return 0;
  }
  nlohmann::json rows = nlohmann::json::array();
  for (const GeodesicSample& s : samples) {
    rows.push_back({{"t", s.t},
                    {"point", to_json(s.point)},
                    {"velocity_norm", s.velocity_norm}});
  }
  emit(config,
       dump({{"velocity", to_json(*v)},
             {"length", length(*v, std::abs(args.t1 - args.t0))},
             {"samples", std::move(rows)}}),
       out);
  return 0;
}

int cmd_verify_closed_forms(const RunConfig& config, const ClosedFormArgs& args,
                            std::ostream& out, std::ostream& err) {
  require_json(config);
  std::vector<ClosedFormSuite> suites;
  if (args.suite == "all") {
    suites = {ClosedFormSuite::v21, ClosedFormSuite::vn1,
              ClosedFormSuite::grassmann_2kk};
  } else if (args.suite == "v21") {
    suites = {ClosedFormSuite::v21};
  } else if (args.suite == "vn1") {
    suites = {ClosedFormSuite::vn1};
  } else if (args.suite == "grassmann") {
    suites = {ClosedFormSuite::grassmann_2kk};
  } else {
    throw FormatError("unknown suite '" + args.suite + "'");
  }
  if (config.samples < 0) throw DomainError("--trials must be non-negative");
  const Index trials = config.samples;
  if (trials == 0) {
    err << "warning: 0 trials, the check is vacuous\n";
  }
  nlohmann::json reports = nlohmann::json::array();
  bool pass = true;
  for (ClosedFormSuite suite : suites) {
    const ClosedFormReport r =
        check_closed_forms(suite, trials, config.seed, args.inject_sign_flip);
    pass = pass && r.pass;
    reports.push_back({{"suite", to_string(r.suite)},
                       {"trials", r.trials},
                       {"max_error", r.max_error},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass}});
  }
  emit(config,
       dump({{"seed", config.seed},
             {"inject_sign_flip", args.inject_sign_flip},
             {"suites", std::move(reports)},
             {"pass", pass}}),
       out);
  return pass ? 0 : 1;
}

int cmd_bracket(const RunConfig& config, std::ostream& out) {
  require_json(config);
  const BracketReport r = bracket_generating_rank(config.n, config.k, config.mode);
  const Index m = stiefel_dimension(config.n, config.k, config.mode);
  const Index l = horizontal_dimension(config.n, config.k, config.mode);
  const MontgomeryReport mg = montgomery_condition(m, l);
  nlohmann::json j = {{"n", r.n},
                      {"k", r.k},
                      {"mode", to_string(r.mode)},
                      {"dim_H", r.dim_h},
                      {"dim_H_plus_brackets", r.dim_h_plus_brackets},
                      {"target_dim", r.target_dim},
                      {"generating", r.generating},
                      {"montgomery",
                       {{"m", mg.m},
                        {"l", mg.l},
                        {"in_scope", mg.in_scope},
                        {"condition1", mg.condition1},
                        {"condition2", mg.condition2},
                        {"possible", mg.possible}}}};
  bool pass = r.generating;
  if (config.k == 1 && config.mode == FieldMode::complex) {
    const StrongBracketReport s =
        strongly_bracket_check_vn1(config.n, samples_or(config, 100), config.seed);
    j["strongly_bracket_generating"] = {{"samples", s.samples},
                                        {"passed", s.passed},
                                        {"rejected_zero", s.rejected_zero},
                                        {"pass", s.strongly_generating}};
    pass = pass && s.strongly_generating;
  }
  j["pass"] = pass;
  emit(config, dump(j), out);
  return pass ? 0 : 1;
}

int cmd_cutlocus_search(const RunConfig& config, const std::string& target,
                        std::ostream& out) {
  require_json(config);
  if (target.empty()) throw FormatError("cutlocus search needs --target");
  const StiefelPoint point = preset_or_json(config, target);
  const MinimizerReport report = search_minimizers(point, search_options(config));
  nlohmann::json j = to_json(report);
  j["config"] = to_json(config);
  emit(config, dump(j), out);
  return report.arrivals.empty() ? 1 : 0;
}

int cmd_verify_L(const RunConfig& config, std::ostream& out) {
  require_json(config);
  return verdict(verify_L_subset_cutlocus(config.n, config.k,
                                          samples_or(config, 100), config.seed,
                                          config.mode),
                 config, out);
}

int cmd_verify_antidiagonal(const RunConfig& config, std::ostream& out) {
  require_json(config);
  return verdict(verify_antidiagonal_not_cut(config.k, samples_or(config, 50),
                                             config.seed, config.mode),
                 config, out);
}

int cmd_uniqueness(const RunConfig& config, std::ostream& out) {
  require_json(config);
  return verdict(
      uniqueness_case_checks(config.n, samples_or(config, 200), config.seed),
      config, out);
}

int cmd_real_cutpoint(const RunConfig& config, std::ostream& out) {
  require_json(config);
  const StiefelPoint target = real_vn1_cutpoint(config.n);
  const MinimizerReport report =
      search_minimizers(target, search_options(config));
  const double expected_t = std::numbers::pi / config.grid.b_norm;
  bool at_pi = !report.arrivals.empty();
  for (const Arrival& a : report.arrivals) {
    at_pi = at_pi && std::abs(a.time - expected_t) <= 1e-6 * expected_t;
  }
  const bool pass = report.clusters >= 2 && at_pi;
  nlohmann::json j = to_json(report);
  j["expected_T"] = expected_t;
  j["pass"] = pass;
  j["config"] = to_json(config);
  emit(config, dump(j), out);
  return pass ? 0 : 1;
}

}  // namespace stiefel_sr::cli
