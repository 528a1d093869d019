#include "cli/app.hpp"

#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "stiefel_sr/errors.hpp"
#include "stiefel_sr/tolerances.hpp"

namespace stiefel_sr::cli {
namespace {

enum Flag : unsigned {
  kN = 1u << 0,
  kK = 1u << 1,
  kMode = 1u << 2,
  kSeed = 1u << 3,
  kSamples = 1u << 4,
  kWorkers = 1u << 5,
  kGrid = 1u << 6,
  kOut = 1u << 7,
  kFormat = 1u << 8,
  kConfig = 1u << 9,
};

constexpr unsigned kExperiment =
    kN | kK | kMode | kSeed | kSamples | kWorkers | kGrid | kOut | kFormat | kConfig;

// Storage for one subcommand's flags. Presence is read back from the
// CLI::Option counts so that unset flags do not override the config file.
struct Flags {
  Index n = 0;
  Index k = 0;
  std::string mode;
  std::uint64_t seed = 0;
  Index samples = 0;
  unsigned workers = 0;
  std::string grid;
  std::string out;
  std::string format;
  std::string config;
  std::map<unsigned, CLI::Option*> options;

  template <typename T>
  void set(std::optional<T>& slot, unsigned flag, const T& value) const {
    const auto it = options.find(flag);
    if (it != options.end() && it->second->count() > 0) slot = value;
  }

  FlagLayer layer() const {
    FlagLayer l;
    set(l.n, kN, n);
    set(l.k, kK, k);
    set(l.mode, kMode, mode);
    set(l.seed, kSeed, seed);
    set(l.samples, kSamples, samples);
    set(l.workers, kWorkers, workers);
    set(l.grid, kGrid, grid);
    set(l.output_path, kOut, out);
    set(l.format, kFormat, format);
    set(l.config_path, kConfig, config);
    return l;
  }
};

void add_flags(CLI::App* app, Flags& f, unsigned which,
               const std::string& samples_help = "number of samples") {
  const auto add = [&](unsigned flag, CLI::Option* opt) { f.options[flag] = opt; };
  if (which & kN) add(kN, app->add_option("--n", f.n, "ambient dimension n"));
  if (which & kK) add(kK, app->add_option("--k", f.k, "number of columns k"));
  if (which & kMode) {
    add(kMode, app->add_option("--mode", f.mode, "field: complex or real")
                   ->check(CLI::IsMember({"complex", "real"})));
  }
  if (which & kSeed) add(kSeed, app->add_option("--seed", f.seed, "RNG seed"));
  if (which & kSamples) {
    add(kSamples, app->add_option("--samples", f.samples, samples_help));
  }
  if (which & kWorkers) {
    add(kWorkers, app->add_option("--workers", f.workers,
                                  "worker threads (0: all cores)"));
  }
  if (which & kGrid) {
    add(kGrid, app->add_option("--grid", f.grid, "velocity grid as JSON or @file"));
  }
  if (which & kOut) add(kOut, app->add_option("--out", f.out, "output file"));
  if (which & kFormat) {
    add(kFormat, app->add_option("--format", f.format, "json or csv")
                     ->check(CLI::IsMember({"json", "csv"})));
  }
  if (which & kConfig) {
    add(kConfig, app->add_option("--config", f.config, "JSON run configuration"));
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Sub-Riemannian geodesics and cut loci on Stiefel manifolds",
               "stiefel-sr"};
  app.require_subcommand(1);

  std::deque<Flags> storage;
  std::function<int()> action;
  const auto bind = [&](CLI::App* sub, const std::string& name,
                        std::function<int(const RunConfig&)> body) {
    Flags& f = storage.back();
    sub->callback([&f, name, body, &action] {
      action = [&f, name, body] {
        const RunConfig config = resolve_config(name, f.layer());
        set_tolerances(config.tolerances);
        return body(config);
      };
    });
  };

  // geodesic eval
  CLI::App* geodesic = app.add_subcommand("geodesic", "geodesic evaluation");
  geodesic->require_subcommand(1);
  CLI::App* eval = geodesic->add_subcommand("eval", "sample a normal geodesic");
  storage.emplace_back();
  add_flags(eval, storage.back(), kN | kMode | kSamples | kOut | kFormat | kConfig,
            "number of time samples");
  GeodesicEvalArgs eval_args;
  Index eval_k = 0;
  CLI::Option* eval_k_opt = eval->add_option("--k", eval_k, "expected k");
  eval->add_option("--velocity", eval_args.velocity,
                   "velocity as JSON, @file or 'zero'");
  eval->add_option("--t0", eval_args.t0, "first time");
  eval->add_option("--t1", eval_args.t1, "last time");
  bind(eval, "geodesic-eval", [&](const RunConfig& c) {
    GeodesicEvalArgs a = eval_args;
    if (eval_k_opt->count() > 0) a.k = eval_k;
    RunConfig cc = c;
    if (a.k) cc.k = *a.k;
    return cmd_geodesic_eval(cc, a, out, err);
  });

  // verify closed-forms
  CLI::App* verify = app.add_subcommand("verify", "oracle checks");
  verify->require_subcommand(1);
  CLI::App* closed = verify->add_subcommand("closed-forms",
                                            "closed forms against the generic formula");
  storage.emplace_back();
  CLI::Option* trials_opt = nullptr;
  {
    Flags& f = storage.back();
    trials_opt = closed->add_option("--trials,--samples", f.samples,
                                    "trials per suite (default 1000)");
    f.options[kSamples] = trials_opt;
    f.options[kSeed] = closed->add_option("--seed", f.seed, "RNG seed");
    f.options[kOut] = closed->add_option("--out", f.out, "output file");
    f.options[kConfig] = closed->add_option("--config", f.config,
                                            "JSON run configuration");
  }
  ClosedFormArgs closed_args;
  closed->add_option("--suite", closed_args.suite, "all, v21, vn1 or grassmann")
      ->check(CLI::IsMember({"all", "v21", "vn1", "grassmann"}));
  closed->add_flag("--inject-sign-flip", closed_args.inject_sign_flip,
                   "negate the closed-form lower block (mutation check)");
  bind(closed, "verify-closed-forms", [&](const RunConfig& c) {
    RunConfig cc = c;
    if (trials_opt->count() == 0 && c.samples == 0) {
      cc.samples = 1000;
    }
    return cmd_verify_closed_forms(cc, closed_args, out, err);
  });

  // Experiments, reachable both as "cutlocus <name>" and as top-level names.
  CLI::App* cutlocus = app.add_subcommand("cutlocus", "cut-locus experiments");
  cutlocus->require_subcommand(1);
  std::deque<std::string> targets;
  using Body = std::function<int(const RunConfig&, const std::string&)>;
  const auto experiment = [&](CLI::App* parent, const std::string& name,
                              const std::string& config_name,
                              const std::string& help, bool with_target,
                              Body body) {
    CLI::App* sub = parent->add_subcommand(name, help);
    storage.emplace_back();
    add_flags(sub, storage.back(), kExperiment);
    targets.emplace_back();
    std::string& target = targets.back();
    if (with_target) {
      sub->add_option("--target,--preset", target,
                      "Stiefel point as JSON / @file, or identity, antipodal, "
                      "antidiagonal");
    }
    bind(sub, config_name,
         [body, &target](const RunConfig& c) { return body(c, target); });
  };

  const Body search = [&](const RunConfig& c, const std::string& target) {
    return cmd_cutlocus_search(c, target, out);
  };
  const Body verify_l = [&](const RunConfig& c, const std::string&) {
    return cmd_verify_L(c, out);
  };
  const Body anti = [&](const RunConfig& c, const std::string&) {
    return cmd_verify_antidiagonal(c, out);
  };
  const Body unique = [&](const RunConfig& c, const std::string&) {
    return cmd_uniqueness(c, out);
  };
  const Body real_cut = [&](const RunConfig& c, const std::string&) {
    return cmd_real_cutpoint(c, out);
  };
  const Body bracket = [&](const RunConfig& c, const std::string&) {
    return cmd_bracket(c, out);
  };

  experiment(cutlocus, "search", "cutlocus-search", "minimizer search", true,
             search);
  experiment(cutlocus, "verify-L", "verify-L", "L is in the cut locus", false,
             verify_l);
  experiment(cutlocus, "verify-antidiagonal", "verify-antidiagonal",
             "antidiagonal points of V_{2k,k}", false, anti);
  experiment(cutlocus, "uniqueness", "uniqueness",
             "uniqueness cases on V_{n,1}", false, unique);
  experiment(cutlocus, "real-cutpoint", "real-cutpoint",
             "the real cut point of V_{n,1}", false, real_cut);
  experiment(&app, "cutlocus-search", "cutlocus-search",
             "alias of cutlocus search", true, search);
  experiment(&app, "verify-L", "verify-L", "alias of cutlocus verify-L", false,
             verify_l);
  experiment(&app, "verify-antidiagonal", "verify-antidiagonal",
             "alias of cutlocus verify-antidiagonal", false, anti);
  experiment(&app, "uniqueness", "uniqueness", "alias of cutlocus uniqueness",
             false, unique);
  experiment(&app, "bracket", "bracket", "bracket generation report", false,
             bracket);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    return action ? action() : 2;
  } catch (const InvariantViolation& e) {
    err << "invariant violation: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace stiefel_sr::cli
