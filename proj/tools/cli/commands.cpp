#include "commands.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "dyft/analysis.hpp"
#include "dyft/lfc.hpp"
#include "dyft/specfun.hpp"
#include "dyft/transform.hpp"
#include "signal_io.hpp"

namespace dyft::cli {
namespace {

namespace fs = std::filesystem;

// Residual above which an alpha = 1 round trip counts as failed.
constexpr double kUnitRoundTripTolerance = 1e-9;

std::string format_complex(Complex z) {
  char buffer[80];
  std::snprintf(buffer, sizeof buffer, "%.15g%+.15gi", z.real(), z.imag());
  return buffer;
}

std::string format_real(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.15g", x);
  return buffer;
}

// Flags that map onto RunConfig. Presence is tracked through the CLI11
// option counts so that --config values are only overridden explicitly.
struct ConfigFlags {
  std::string config_path;
  double alpha = 1.0;
  std::string convention;
  double rel_tol = 0.0;
  int max_terms = 0;
  double guard = 0.0;
  int max_bits = 0;
  std::string threads;

  CLI::Option* alpha_opt = nullptr;
  CLI::Option* convention_opt = nullptr;
  CLI::Option* rel_tol_opt = nullptr;
  CLI::Option* max_terms_opt = nullptr;
  CLI::Option* guard_opt = nullptr;
  CLI::Option* max_bits_opt = nullptr;
  CLI::Option* threads_opt = nullptr;

  void attach(CLI::App* app, bool with_alpha, bool with_convention) {
    app->add_option("--config", config_path,
                    "JSON run configuration; explicit flags take precedence");
    if (with_alpha) {
      alpha_opt = app->add_option("--alpha", alpha, "Fractal order in (0, 1]");
    }
    if (with_convention) {
      convention_opt = app->add_option(
          "--convention", convention,
          "Kernel convention: conjugate-pair or negated-principal");
    }
    rel_tol_opt = app->add_option("--rel-tol", rel_tol,
                                  "Series termination tolerance");
    max_terms_opt = app->add_option("--max-terms", max_terms,
                                    "Series term limit");
    guard_opt = app->add_option("--guard", guard, "Largest admissible |z|");
    max_bits_opt = app->add_option("--max-precision-bits", max_bits,
                                   "Working-precision limit for cancellation");
    threads_opt = app->add_option("--threads", threads,
                                  "Worker threads (integer or auto)");
  }

  [[nodiscard]] RunConfig resolve() const {
    RunConfig cfg;
    if (!config_path.empty()) {
      cfg = RunConfig::from_json(read_json_file(config_path));
    }
    nlohmann::ordered_json overrides = nlohmann::ordered_json::object();
    if (alpha_opt && alpha_opt->count()) overrides["alpha"] = alpha;
    if (convention_opt && convention_opt->count()) {
      overrides["convention"] = convention;
    }
    if (rel_tol_opt->count()) overrides["rel_tol"] = rel_tol;
    if (max_terms_opt->count()) overrides["max_terms"] = max_terms;
    if (guard_opt->count()) overrides["magnitude_guard"] = guard;
    if (max_bits_opt->count()) overrides["max_precision_bits"] = max_bits;
    if (threads_opt->count()) {
      try {
        overrides["threads"] =
            threads == "auto" ? nlohmann::ordered_json("auto")
                              : nlohmann::ordered_json(std::stoi(threads));
      } catch (const std::exception&) {
        throw InputError("--threads must be an integer or auto");
      }
    }
    const RunConfig flags = RunConfig::from_json(overrides);
    if (flags.alpha) cfg.alpha = flags.alpha;
    if (convention_opt && convention_opt->count()) {
      cfg.convention = flags.convention;
    }
    if (rel_tol_opt->count()) cfg.ml.rel_tol = flags.ml.rel_tol;
    if (max_terms_opt->count()) cfg.ml.max_terms = flags.ml.max_terms;
    if (guard_opt->count()) cfg.ml.magnitude_guard = flags.ml.magnitude_guard;
    if (max_bits_opt->count()) {
      cfg.ml.max_precision_bits = flags.ml.max_precision_bits;
    }
    if (threads_opt->count()) cfg.threads = flags.threads;
    try {
      cfg.ml.validate();
    } catch (const DomainError& e) {
      throw InputError(e.what());
    }
    return cfg;
  }
};

double require_alpha(const RunConfig& cfg,
                     const std::optional<nlohmann::ordered_json>& meta) {
  if (cfg.alpha) return *cfg.alpha;
  if (meta && meta->contains("alpha") && !(*meta)["alpha"].is_null()) {
    return (*meta)["alpha"].get<double>();
  }
  throw InputError("fractal order missing: pass --alpha or set it in --config");
}

std::optional<nlohmann::ordered_json> optional_sidecar(const fs::path& csv,
                                                       std::size_t n) {
  const auto path = sidecar_path(csv);
  if (!fs::exists(path)) return std::nullopt;
  auto meta = read_json_file(path);
  if (meta.contains("n") && meta["n"].get<std::size_t>() != n) {
    throw InputError("sidecar n = " + meta["n"].dump() + " but '" +
                     csv.string() + "' holds " + std::to_string(n) +
                     " samples");
  }
  return meta;
}

// --- forward ---------------------------------------------------------------

struct ForwardArgs {
  std::string input;
  std::string output;
  double dt = 0.0;
  CLI::Option* dt_opt = nullptr;
};

int cmd_forward(const ForwardArgs& args, const RunConfig& cfg,
                std::ostream& out) {
  const auto values = read_signal_csv(args.input);
  const auto meta = optional_sidecar(args.input, values.size());
  double dt = args.dt;
  if (!args.dt_opt->count()) {
    if (!meta || !meta->contains("dt")) {
      throw InputError("sample spacing missing: pass --dt or add dt to '" +
                       sidecar_path(args.input).string() + "'");
    }
    dt = (*meta)["dt"].get<double>();
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InputError("--dt must be positive and finite");
  }
  const FractalOrder order(require_alpha(cfg, meta));
  const auto plan = make_plan(values.size(), order, Direction::Forward,
                              cfg.convention, cfg.ml,
                              PlanOptions{true, cfg.threads});
  const auto spectrum = forward(values, dt, plan);
  write_signal_csv(args.output, spectrum.coeffs());
  nlohmann::ordered_json sidecar;
  sidecar["n"] = spectrum.size();
  sidecar["domega"] = spectrum.domega();
  sidecar["alpha"] = order.value();
  sidecar["convention"] = std::string(to_string(cfg.convention));
  sidecar["dt"] = dt;
  write_json_file(sidecar_path(args.output), sidecar);
  out << "forward: n=" << spectrum.size() << " alpha=" << order.value()
      << " -> " << args.output << "\n";
  return kOk;
}

// --- inverse ---------------------------------------------------------------

struct InverseArgs {
  std::string input;
  std::string output;
};

int cmd_inverse(const InverseArgs& args, const RunConfig& cfg,
                std::ostream& out) {
  const auto values = read_signal_csv(args.input);
  const auto meta = read_json_file(sidecar_path(args.input));
  for (const char* key : {"n", "domega", "alpha", "convention"}) {
    if (!meta.contains(key)) {
      throw InputError("spectrum sidecar lacks '" + std::string(key) + "'");
    }
  }
  const std::size_t n = meta["n"].get<std::size_t>();
  if (n != values.size()) {
    throw InputError("sidecar n = " + std::to_string(n) + " but spectrum has " +
                     std::to_string(values.size()) + " rows");
  }
  const double domega = meta["domega"].get<double>();
  if (!(domega > 0.0) || !std::isfinite(domega)) {
    throw InputError("sidecar domega must be positive and finite");
  }
  const double dt = meta.contains("dt")
                        ? meta["dt"].get<double>()
                        : 2.0 * std::numbers::pi / (static_cast<double>(n) * domega);
  const double closure = domega * dt * static_cast<double>(n) / (2.0 * std::numbers::pi);
  if (!(std::abs(closure - 1.0) <= 1e-12)) {
    throw InputError("sidecar domega, dt and n are inconsistent");
  }
  const FractalOrder order(meta["alpha"].get<double>());
  const auto convention = parse_convention(meta["convention"].get<std::string>());
  const Spectrum spectrum(values, order, dt, convention);
  const auto plan = make_plan(n, order, Direction::Inverse, convention, cfg.ml,
                              PlanOptions{true, cfg.threads});
  const auto signal = inverse(spectrum, plan);
  write_signal_csv(args.output, signal);
  nlohmann::ordered_json sidecar;
  sidecar["n"] = n;
  sidecar["dt"] = dt;
  sidecar["alpha"] = order.value();
  write_json_file(sidecar_path(args.output), sidecar);
  out << "inverse: n=" << n << " alpha=" << order.value() << " -> "
      << args.output << "\n";
  return kOk;
}

// --- roundtrip -------------------------------------------------------------

struct RoundTripArgs {
  std::string input;
  std::string generate;
  std::string report;
  double dt = 1.0;
  std::uint64_t seed = 0;
  CLI::Option* dt_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

int cmd_roundtrip(const RoundTripArgs& args, const RunConfig& cfg,
                  std::ostream& out) {
  std::vector<Complex> values;
  std::optional<nlohmann::ordered_json> meta;
  std::optional<std::string> family_name;
  if (!args.generate.empty()) {
    if (!args.input.empty()) {
      throw InputError("pass either an input file or --generate, not both");
    }
    const auto colon = args.generate.find(':');
    if (colon == std::string::npos) {
      throw InputError("--generate expects family:N, e.g. random:8");
    }
    const auto family = analysis::parse_family(args.generate.substr(0, colon));
    std::size_t n = 0;
    try {
      n = std::stoul(args.generate.substr(colon + 1));
    } catch (const std::exception&) {
      throw InputError("--generate size must be a positive integer");
    }
    if (n == 0) throw InputError("--generate size must be a positive integer");
    values = analysis::make_signal(family, n, args.seed);
    family_name = std::string(analysis::to_string(family));
  } else {
    if (args.input.empty()) throw InputError("roundtrip needs an input file");
    values = read_signal_csv(args.input);
    meta = optional_sidecar(args.input, values.size());
  }
  double dt = args.dt;
  if (!args.dt_opt->count() && meta && meta->contains("dt")) {
    dt = (*meta)["dt"].get<double>();
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw InputError("--dt must be positive and finite");
  }
  const FractalOrder order(require_alpha(cfg, meta));
  const PlanOptions options{true, cfg.threads};
  const auto fwd = make_plan(values.size(), order, Direction::Forward,
                             cfg.convention, cfg.ml, options);
  const auto inv = make_plan(values.size(), order, Direction::Inverse,
                             cfg.convention, cfg.ml, options);
  const auto trip = roundtrip(values, dt, fwd, inv);

  nlohmann::ordered_json report;
  report["alpha"] = order.value();
  report["n"] = values.size();
  report["max_abs"] = trip.residual.max_abs;
  report["rms"] = trip.residual.rms;
  report["convention"] = std::string(to_string(cfg.convention));
  if (family_name) {
    report["family"] = *family_name;
    if (*family_name == "random") report["seed"] = args.seed;
  }
  if (!args.report.empty()) write_json_file(args.report, report);
  out << report.dump() << "\n";
  if (order.value() == 1.0 && trip.residual.max_abs > kUnitRoundTripTolerance) {
    return kCheckFailed;
  }
  return kOk;
}

// --- mlf -------------------------------------------------------------------

struct MlfArgs {
  double re = 0.0;
  double im = 0.0;
  int oracle_digits = 0;
  CLI::Option* oracle_opt = nullptr;
};

int cmd_mlf(const MlfArgs& args, const RunConfig& cfg, std::ostream& out) {
  const FractalOrder order(require_alpha(cfg, std::nullopt));
  const Complex z{args.re, args.im};
  const Complex value = specfun::mittag_leffler(order, z, cfg.ml);
  out << "E = " << format_complex(value) << "\n";
  if (args.oracle_opt->count()) {
    const auto oracle =
        specfun::mittag_leffler_oracle_decimal(order, z, args.oracle_digits);
    out << "oracle.re = " << oracle.re << "\n";
    out << "oracle.im = " << oracle.im << "\n";
    const double gap = std::abs(value - oracle.value) / std::abs(oracle.value);
    out << "relative_gap = " << format_real(gap) << "\n";
  }
  return kOk;
}

// --- quad ------------------------------------------------------------------

struct QuadArgs {
  std::string input;
  std::string partition;
};

lfc::Partition parse_partition(const std::string& spec, std::size_t samples) {
  const std::string prefix = "uniform:";
  if (spec.rfind(prefix, 0) == 0) {
    const std::string bounds = spec.substr(prefix.size());
    const auto comma = bounds.find(',');
    if (comma == std::string::npos) {
      throw InputError("--partition uniform:a,b needs two bounds");
    }
    double a = 0.0;
    double b = 0.0;
    try {
      std::size_t used_a = 0;
      std::size_t used_b = 0;
      a = std::stod(bounds.substr(0, comma), &used_a);
      b = std::stod(bounds.substr(comma + 1), &used_b);
      if (used_a != comma || used_b != bounds.size() - comma - 1) {
        throw std::invalid_argument("trailing characters");
      }
    } catch (const std::exception&) {
      throw InputError("--partition bounds must be numbers");
    }
    if (!(b > a)) throw InputError("--partition needs a < b");
    return lfc::Partition::uniform(a, b, samples);
  }
  try {
    return lfc::Partition(read_partition_csv(spec));
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
}

int cmd_quad(const QuadArgs& args, const RunConfig& cfg, std::ostream& out) {
  const auto values = read_signal_csv(args.input);
  const auto partition = parse_partition(args.partition, values.size());
  const FractalOrder order(require_alpha(cfg, std::nullopt));
  const Complex value = lfc::lfi_quadrature(values, partition, order);
  out << "integral = " << format_complex(value) << "\n";
  return kOk;
}

// --- check -----------------------------------------------------------------

struct CheckArgs {
  std::string suite = "all";
  std::string json;
  std::uint64_t seed = analysis::SuiteOptions{}.seed;
  int draws = analysis::SuiteOptions{}.linearity_draws;
};

int cmd_check(const CheckArgs& args, const RunConfig& cfg, std::ostream& out) {
  analysis::SuiteOptions options;
  options.seed = args.seed;
  options.linearity_draws = args.draws;
  options.cfg = cfg.ml;
  options.threads = cfg.threads;
  const auto report = analysis::run_suite(analysis::parse_suite(args.suite), options);
  for (const auto& check : report.checks) {
    const char* verdict =
        !check.passed ? "INFO" : (*check.passed ? "PASS" : "FAIL");
    out << verdict << ' ' << check.name << ' ' << check.details.dump()
        << " deviation=" << format_real(check.max_deviation)
        << " tolerance=" << format_real(check.tolerance) << "\n";
  }
  if (!args.json.empty()) write_json_file(args.json, report.to_json());
  if (!report.passed()) {
    for (const auto& name : report.failures()) out << "failed: " << name << "\n";
    return kCheckFailed;
  }
  return kOk;
}

// --- sweep -----------------------------------------------------------------

struct SweepArgs {
  std::vector<double> alphas;
  std::vector<std::size_t> ns;
  std::vector<std::string> families{"constant", "impulse", "random"};
  std::vector<std::string> conventions{"conjugate-pair"};
  std::string output;
  std::uint64_t seed = 0;
};

int cmd_sweep(const SweepArgs& args, const RunConfig& cfg, std::ostream& out) {
  std::vector<analysis::SignalFamily> families;
  for (const auto& f : args.families) families.push_back(analysis::parse_family(f));
  std::vector<KernelConvention> conventions;
  for (const auto& c : args.conventions) conventions.push_back(parse_convention(c));
  for (const double a : args.alphas) (void)FractalOrder(a);
  PlanCache cache(PlanOptions{true, cfg.threads});
  const auto table = analysis::residual_sweep(args.alphas, args.ns, families,
                                              conventions, cfg.ml, args.seed,
                                              &cache);
  const std::string csv = table.to_csv();
  if (args.output.empty()) {
    out << csv;
  } else {
    std::ofstream file(args.output, std::ios::binary | std::ios::trunc);
    if (!file) throw InputError("cannot write '" + args.output + "'");
    file << csv;
    out << "sweep: " << table.rows.size() << " rows -> " << args.output << "\n";
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Discrete Yang-Fourier transforms and Mittag-Leffler tools",
               "dyft"};
  app.require_subcommand(1);

  ConfigFlags forward_flags;
  ForwardArgs forward_args;
  auto* forward_cmd = app.add_subcommand("forward", "Forward N-point transform");
  forward_cmd->add_option("input", forward_args.input, "Signal CSV")->required();
  forward_cmd->add_option("--out", forward_args.output, "Spectrum CSV")->required();
  forward_args.dt_opt =
      forward_cmd->add_option("--dt", forward_args.dt, "Sample spacing");
  forward_flags.attach(forward_cmd, true, true);

  ConfigFlags inverse_flags;
  InverseArgs inverse_args;
  auto* inverse_cmd = app.add_subcommand(
      "inverse", "Inverse transform; order and convention come from the sidecar");
  inverse_cmd->add_option("input", inverse_args.input, "Spectrum CSV")->required();
  inverse_cmd->add_option("--out", inverse_args.output, "Signal CSV")->required();
  inverse_flags.attach(inverse_cmd, false, false);

  ConfigFlags roundtrip_flags;
  RoundTripArgs roundtrip_args;
  auto* roundtrip_cmd =
      app.add_subcommand("roundtrip", "inverse(forward(f)) residual report");
  roundtrip_cmd->add_option("input", roundtrip_args.input, "Signal CSV");
  roundtrip_cmd->add_option("--generate", roundtrip_args.generate,
                            "Built-in signal family:N (constant, impulse, random)");
  roundtrip_args.seed_opt =
      roundtrip_cmd->add_option("--seed", roundtrip_args.seed, "Seed for random signals");
  roundtrip_args.dt_opt =
      roundtrip_cmd->add_option("--dt", roundtrip_args.dt, "Sample spacing");
  roundtrip_cmd->add_option("--report", roundtrip_args.report, "JSON report path");
  roundtrip_flags.attach(roundtrip_cmd, true, true);

  ConfigFlags mlf_flags;
  MlfArgs mlf_args;
  auto* mlf_cmd = app.add_subcommand("mlf", "Evaluate E_alpha(z)");
  mlf_cmd->add_option("--re", mlf_args.re, "Real part of z");
  mlf_cmd->add_option("--im", mlf_args.im, "Imaginary part of z");
  mlf_args.oracle_opt = mlf_cmd->add_option(
      "--oracle-digits", mlf_args.oracle_digits,
      "Also print the high-precision reference with this many digits");
  mlf_flags.attach(mlf_cmd, true, false);

  ConfigFlags quad_flags;
  QuadArgs quad_args;
  auto* quad_cmd = app.add_subcommand("quad", "Local fractional integral sum");
  quad_cmd->add_option("input", quad_args.input, "Samples at left nodes (CSV)")
      ->required();
  quad_cmd->add_option("--partition", quad_args.partition,
                       "uniform:a,b or a CSV of points with header t")
      ->required();
  quad_flags.attach(quad_cmd, true, false);

  ConfigFlags check_flags;
  CheckArgs check_args;
  auto* check_cmd = app.add_subcommand("check", "Run property checks");
  check_cmd->add_option("--suite", check_args.suite,
                        "all, linearity, periodic, dft or refinement");
  check_cmd->add_option("--json", check_args.json, "Aggregated JSON report path");
  check_cmd->add_option("--seed", check_args.seed, "Seed for random draws");
  check_cmd->add_option("--draws", check_args.draws,
                        "Random draws per linearity cell");
  check_flags.attach(check_cmd, false, false);

  ConfigFlags sweep_flags;
  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Round-trip residual table");
  sweep_cmd->add_option("--alphas", sweep_args.alphas, "Orders")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--ns", sweep_args.ns, "Sizes")->delimiter(',')->required();
  sweep_cmd->add_option("--families", sweep_args.families,
                        "constant, impulse, random")
      ->delimiter(',');
  sweep_cmd->add_option("--conventions", sweep_args.conventions,
                        "conjugate-pair, negated-principal")
      ->delimiter(',');
  sweep_cmd->add_option("--out", sweep_args.output, "CSV path (stdout if absent)");
  sweep_cmd->add_option("--seed", sweep_args.seed, "Seed for random signals");
  sweep_flags.attach(sweep_cmd, false, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInputError;
  }

  try {
    if (forward_cmd->parsed()) {
      return cmd_forward(forward_args, forward_flags.resolve(), out);
    }
    if (inverse_cmd->parsed()) {
      return cmd_inverse(inverse_args, inverse_flags.resolve(), out);
    }
    if (roundtrip_cmd->parsed()) {
      return cmd_roundtrip(roundtrip_args, roundtrip_flags.resolve(), out);
    }
    if (mlf_cmd->parsed()) return cmd_mlf(mlf_args, mlf_flags.resolve(), out);
    if (quad_cmd->parsed()) return cmd_quad(quad_args, quad_flags.resolve(), out);
    if (check_cmd->parsed()) {
      return cmd_check(check_args, check_flags.resolve(), out);
    }
    if (sweep_cmd->parsed()) {
      return cmd_sweep(sweep_args, sweep_flags.resolve(), out);
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed metadata: " << e.what() << "\n";
    return kInputError;
  } catch (const EnvelopeExceeded& e) {
    err << "limit: " << e.what() << "\n";
    return kEnvelopeError;
  } catch (const GuardExceeded& e) {
    err << "limit: " << e.what() << "\n";
    return kEnvelopeError;
  } catch (const NonConvergence& e) {
    err << "limit: " << e.what() << "\n";
    return kEnvelopeError;
  } catch (const OverflowError& e) {
    err << "limit: " << e.what() << "\n";
    return kEnvelopeError;
  }
  return kInputError;
}

}  // namespace dyft::cli
