#include "dyft/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "dyft/random.hpp"
#include "dyft/summation.hpp"

namespace dyft::analysis {
namespace {

constexpr double kLinearityTolerance = 1e-10;
constexpr double kPeriodicTolerance = 1e-14;
constexpr double kDftTolerance = 1e-12;
constexpr double kExponentTolerance = 1e-6;

std::string format_double(double x) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

nlohmann::ordered_json complex_json(Complex z) {
  return nlohmann::ordered_json::array({z.real(), z.imag()});
}

double slope(std::span<const double> x, std::span<const double> y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

double evaluate(TestFunction f, double t) {
  switch (f) {
    case TestFunction::One:
      return 1.0;
    case TestFunction::Identity:
      return t;
    case TestFunction::Square:
      return t * t;
  }
  return 0.0;
}

// Classical integral over [a, b]; the alpha = 1 limit of the sums.
double exact_integral(TestFunction f, double a, double b) {
  switch (f) {
    case TestFunction::One:
      return b - a;
    case TestFunction::Identity:
      return (b * b - a * a) / 2.0;
    case TestFunction::Square:
      return (b * b * b - a * a * a) / 3.0;
  }
  return 0.0;
}

}  // namespace

nlohmann::ordered_json to_json(const CheckReport& report) {
  nlohmann::ordered_json json;
  json["name"] = report.name;
  json["passed"] = report.passed ? nlohmann::ordered_json(*report.passed)
                                 : nlohmann::ordered_json(nullptr);
  json["max_deviation"] = report.max_deviation;
  json["tolerance"] = report.tolerance;
  json["details"] = report.details;
  return json;
}

CheckReport report_from_json(const nlohmann::ordered_json& json) {
  CheckReport report;
  report.name = json.at("name").get<std::string>();
  if (!json.at("passed").is_null()) report.passed = json.at("passed").get<bool>();
  report.max_deviation = json.at("max_deviation").get<double>();
  report.tolerance = json.at("tolerance").get<double>();
  report.details = json.at("details");
  return report;
}

std::string_view to_string(SignalFamily family) noexcept {
  switch (family) {
    case SignalFamily::Constant:
      return "constant";
    case SignalFamily::Impulse:
      return "impulse";
    case SignalFamily::Random:
      return "random";
  }
  return "unknown";
}

SignalFamily parse_family(std::string_view text) {
  if (text == "constant") return SignalFamily::Constant;
  if (text == "impulse") return SignalFamily::Impulse;
  if (text == "random") return SignalFamily::Random;
  throw DomainError("unknown signal family '" + std::string(text) +
                    "' (expected constant, impulse or random)");
}

std::vector<Complex> make_signal(SignalFamily family, std::size_t n,
                                 std::uint64_t seed) {
  std::vector<Complex> values(n);
  switch (family) {
    case SignalFamily::Constant:
      std::fill(values.begin(), values.end(), Complex{1.0, 0.0});
      break;
    case SignalFamily::Impulse:
      if (n > 0) values[0] = {1.0, 0.0};
      break;
    case SignalFamily::Random:
      values = SeededRng(derive_seed(seed, n)).signal(n);
      break;
  }
  return values;
}

std::string SweepTable::to_csv() const {
  std::ostringstream os;
  os << "alpha,n,signal_family,convention,roundtrip_max_abs,roundtrip_rms,"
        "status\n";
  for (const auto& row : rows) {
    os << format_double(row.alpha) << ',' << row.n << ',' << row.signal_family
       << ',' << to_string(row.convention) << ','
       << format_double(row.roundtrip_max_abs) << ','
       << format_double(row.roundtrip_rms) << ',';
    if (row.error.empty()) {
      os << "ok";
    } else {
      // Keep the field CSV-safe.
      std::string message = row.error;
      std::replace(message.begin(), message.end(), ',', ';');
      std::replace(message.begin(), message.end(), '\n', ' ');
      os << "error: " << message;
    }
    os << '\n';
  }
  return os.str();
}

CheckReport check_linearity(std::span<const Complex> f1,
                            std::span<const Complex> f2, Complex a, Complex b,
                            const TransformPlan& plan) {
  if (f1.size() != f2.size() || f1.size() != plan.size()) {
    throw MismatchError("linearity check needs two signals of the plan size");
  }
  std::vector<Complex> combined(f1.size());
  for (std::size_t i = 0; i < f1.size(); ++i) combined[i] = a * f1[i] + b * f2[i];
  const auto lhs = forward(combined, 1.0, plan);
  const auto s1 = forward(f1, 1.0, plan);
  const auto s2 = forward(f2, 1.0, plan);
  double deviation = 0.0;
  for (std::size_t k = 0; k < plan.size(); ++k) {
    const Complex rhs = a * s1.coeffs()[k] + b * s2.coeffs()[k];
    deviation = std::max(deviation, std::abs(lhs.coeffs()[k] - rhs));
  }
  CheckReport report;
  report.name = "linearity";
  report.max_deviation = deviation;
  report.tolerance = kLinearityTolerance;
  report.passed = deviation <= kLinearityTolerance;
  report.details["alpha"] = plan.order().value();
  report.details["n"] = plan.size();
  report.details["convention"] = std::string(to_string(plan.convention()));
  report.details["a"] = complex_json(a);
  report.details["b"] = complex_json(b);
  return report;
}

CheckReport check_periodic_sum(const lfc::DiscreteApproximation& approx,
                               std::int64_t j) {
  if (approx.extension() != lfc::Extension::Periodic) {
    throw MismatchError("periodic-sum check needs a Periodic approximation");
  }
  const auto n = static_cast<std::int64_t>(approx.size());
  ComplexNeumaierSum shifted;
  ComplexNeumaierSum base;
  double scale = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    shifted += lfc::coefficient_at(approx, j + i);
    base += lfc::coefficient_at(approx, i);
    scale += std::abs(lfc::coefficient_at(approx, i));
  }
  const double deviation = std::abs(shifted.value() - base.value());
  CheckReport report;
  report.name = "periodic_sum";
  report.max_deviation = deviation;
  report.tolerance = kPeriodicTolerance * std::max(1.0, scale);
  report.passed = deviation <= report.tolerance;
  report.details["n"] = approx.size();
  report.details["j"] = j;
  report.details["window_sum"] = complex_json(shifted.value());
  report.details["base_sum"] = complex_json(base.value());
  return report;
}

CheckReport check_dft_equivalence(std::size_t n, const MLConfig& cfg) {
  const FractalOrder unit(1.0);
  const auto plan = make_plan(n, unit, Direction::Forward,
                              KernelConvention::ConjugatePair, cfg);
  double deviation = 0.0;
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      // Reduce n*k mod N before scaling so the reference angle is exact-ish.
      const double angle = -2.0 * std::numbers::pi *
                           static_cast<double>((row * col) % n) /
                           static_cast<double>(n);
      deviation =
          std::max(deviation, std::abs(plan.at(row, col) - std::polar(1.0, angle)));
    }
  }
  CheckReport report;
  report.name = "dft_equivalence";
  report.max_deviation = deviation;
  report.tolerance = kDftTolerance;
  report.passed = deviation <= kDftTolerance;
  report.details["n"] = n;
  report.details["entries"] = n * n;
  return report;
}

SweepTable residual_sweep(std::span<const double> alphas,
                          std::span<const std::size_t> ns,
                          std::span<const SignalFamily> families,
                          std::span<const KernelConvention> conventions,
                          const MLConfig& cfg, std::uint64_t seed,
                          PlanCache* cache) {
  PlanCache local;
  PlanCache& plans = cache ? *cache : local;
  std::vector<double> sorted_alphas(alphas.begin(), alphas.end());
  std::vector<std::size_t> sorted_ns(ns.begin(), ns.end());
  std::sort(sorted_alphas.begin(), sorted_alphas.end());
  std::sort(sorted_ns.begin(), sorted_ns.end());

  SweepTable table;
  table.seed = seed;
  for (const double alpha : sorted_alphas) {
    const FractalOrder order(alpha);
    for (const std::size_t n : sorted_ns) {
      for (const auto convention : conventions) {
        std::shared_ptr<const TransformPlan> fwd;
        std::shared_ptr<const TransformPlan> inv;
        std::string error;
        try {
          fwd = plans.get(n, order, Direction::Forward, convention, cfg);
          inv = plans.get(n, order, Direction::Inverse, convention, cfg);
        } catch (const EnvelopeExceeded& e) {
          error = e.what();
        } catch (const GuardExceeded& e) {
          error = e.what();
        } catch (const NonConvergence& e) {
          error = e.what();
        }
        for (const auto family : families) {
          SweepRow row;
          row.alpha = alpha;
          row.n = n;
          row.signal_family = std::string(to_string(family));
          row.convention = convention;
          if (!error.empty()) {
            row.error = error;
            row.roundtrip_max_abs = std::numeric_limits<double>::quiet_NaN();
            row.roundtrip_rms = std::numeric_limits<double>::quiet_NaN();
          } else {
            const auto signal = make_signal(family, n, seed);
            const auto trip = roundtrip(signal, 1.0, *fwd, *inv);
            row.roundtrip_max_abs = trip.residual.max_abs;
            row.roundtrip_rms = trip.residual.rms;
          }
          table.rows.push_back(std::move(row));
        }
      }
    }
  }
  return table;
}

std::string_view to_string(TestFunction f) noexcept {
  switch (f) {
    case TestFunction::One:
      return "one";
    case TestFunction::Identity:
      return "t";
    case TestFunction::Square:
      return "t^2";
  }
  return "unknown";
}

CheckReport refinement_study(TestFunction f, double a, double b,
                             FractalOrder order,
                             std::span<const std::size_t> levels) {
  if (levels.size() < 2) {
    throw DomainError("refinement study needs at least two levels");
  }
  if (!std::is_sorted(levels.begin(), levels.end()) ||
      std::adjacent_find(levels.begin(), levels.end()) != levels.end()) {
    throw DomainError("refinement levels must be strictly ascending");
  }
  std::vector<double> log_n;
  std::vector<double> log_value;
  std::vector<double> values;
  for (const std::size_t n : levels) {
    const auto partition = lfc::Partition::uniform(a, b, n);
    std::vector<Complex> samples(n);
    for (std::size_t j = 0; j < n; ++j) {
      samples[j] = evaluate(f, partition.points()[j]);
    }
    const double value = lfc::lfi_quadrature(samples, partition, order).real();
    values.push_back(value);
    log_n.push_back(std::log(static_cast<double>(n)));
    log_value.push_back(std::log(std::abs(value)));
  }
  const double exponent = slope(log_n, log_value);

  CheckReport report;
  report.name = "refinement";
  report.details["function"] = std::string(to_string(f));
  report.details["interval"] = {a, b};
  report.details["alpha"] = order.value();
  report.details["levels"] = std::vector<std::size_t>(levels.begin(), levels.end());
  report.details["values"] = values;
  report.details["exponent"] = exponent;
  if (f == TestFunction::One) {
    const double expected = 1.0 - order.value();
    report.details["expected_exponent"] = expected;
    report.max_deviation = std::abs(exponent - expected);
    report.tolerance = kExponentTolerance;
    report.passed = report.max_deviation <= kExponentTolerance;
  } else {
    report.tolerance = kExponentTolerance;
    if (order.value() == 1.0) {
      const double exact = exact_integral(f, a, b);
      std::vector<double> errors;
      std::vector<double> log_error;
      for (const double v : values) {
        errors.push_back(std::abs(v - exact));
        log_error.push_back(std::log(std::abs(v - exact)));
      }
      report.details["exact"] = exact;
      report.details["errors"] = errors;
      report.details["observed_order"] = -slope(log_n, log_error);
      report.max_deviation = errors.back();
    }
  }
  return report;
}

Suite parse_suite(std::string_view text) {
  if (text == "all") return Suite::All;
  if (text == "linearity") return Suite::Linearity;
  if (text == "periodic") return Suite::Periodic;
  if (text == "dft") return Suite::Dft;
  if (text == "refinement") return Suite::Refinement;
  throw DomainError("unknown suite '" + std::string(text) +
                    "' (expected all, linearity, periodic, dft or refinement)");
}

bool SuiteReport::passed() const noexcept {
  return std::none_of(checks.begin(), checks.end(), [](const CheckReport& r) {
    return r.passed.has_value() && !*r.passed;
  });
}

std::vector<std::string> SuiteReport::failures() const {
  std::vector<std::string> names;
  for (const auto& r : checks) {
    if (r.passed.has_value() && !*r.passed) {
      std::ostringstream os;
      os << r.name << " (" << r.details.dump() << ")";
      names.push_back(os.str());
    }
  }
  return names;
}

nlohmann::ordered_json SuiteReport::to_json() const {
  nlohmann::ordered_json json;
  json["passed"] = passed();
  json["failures"] = failures();
  json["checks"] = nlohmann::ordered_json::array();
  for (const auto& r : checks) json["checks"].push_back(analysis::to_json(r));
  return json;
}

SuiteReport run_suite(Suite suite, const SuiteOptions& options) {
  SuiteReport out;
  const auto wants = [suite](Suite s) { return suite == Suite::All || suite == s; };
  PlanCache cache(PlanOptions{true, options.threads});

  if (wants(Suite::Dft)) {
    for (const std::size_t n : {1, 2, 4, 8, 16}) {
      out.checks.push_back(check_dft_equivalence(n, options.cfg));
    }
  }

  if (wants(Suite::Periodic)) {
    SeededRng rng(derive_seed(options.seed, 7));
    for (const std::size_t n : {1, 4, 7, 16}) {
      const lfc::SampledSignal signal(rng.signal(n), 0.37);
      const auto approx = lfc::build_discrete_approximation(
          signal, FractalOrder(0.6), lfc::Extension::Periodic);
      CheckReport worst;
      const auto span = static_cast<std::int64_t>(3 * n);
      for (std::int64_t j = -span; j <= span; ++j) {
        auto r = check_periodic_sum(approx, j);
        if (j == -span || r.max_deviation > worst.max_deviation) {
          worst = std::move(r);
        }
      }
      worst.details["j_range"] = {-span, span};
      out.checks.push_back(std::move(worst));
    }
  }

  if (wants(Suite::Linearity)) {
    for (const double alpha : {0.3, 0.5, 0.8, 1.0}) {
      const FractalOrder order(alpha);
      for (const std::size_t n : {1, 4, 8, 16, 32, 64}) {
        if (n > envelope_max_size(order)) continue;
        const auto plan = cache.get(n, order, Direction::Forward,
                                    KernelConvention::ConjugatePair, options.cfg);
        SeededRng rng(derive_seed(
            options.seed, 1000 * n + static_cast<std::size_t>(alpha * 100)));
        CheckReport worst;
        for (int draw = 0; draw < options.linearity_draws; ++draw) {
          const auto f1 = rng.signal(n);
          const auto f2 = rng.signal(n);
          const Complex a = 3.0 * rng.unit_box();
          const Complex b = 3.0 * rng.unit_box();
          auto r = check_linearity(f1, f2, a, b, *plan);
          if (draw == 0 || r.max_deviation > worst.max_deviation) {
            worst = std::move(r);
          }
        }
        worst.details["draws"] = options.linearity_draws;
        worst.details["seed"] = options.seed;
        out.checks.push_back(std::move(worst));
      }
    }
  }

  if (wants(Suite::Refinement)) {
    const std::vector<std::size_t> levels{4, 8, 16, 32, 64};
    for (const double alpha : {0.3, 0.5, 0.8, 1.0}) {
      out.checks.push_back(refinement_study(TestFunction::One, 0.0, 1.0,
                                            FractalOrder(alpha), levels));
    }
    const std::vector<std::size_t> fine{8, 16, 32};
    out.checks.push_back(refinement_study(TestFunction::Identity, 0.0, 1.0,
                                          FractalOrder(1.0), fine));
  }
  return out;
}

}  // namespace dyft::analysis
