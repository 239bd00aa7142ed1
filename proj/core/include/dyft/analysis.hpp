#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dyft/lfc.hpp"
#include "dyft/transform.hpp"
#include "dyft/types.hpp"

namespace dyft::analysis {

/// Outcome of one property check. `passed` is empty when the check only
/// reports (not applicable).
struct CheckReport {
  std::string name;
  std::optional<bool> passed;
  double max_deviation = 0.0;
  double tolerance = 0.0;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();

  friend bool operator==(const CheckReport&, const CheckReport&) = default;
};

[[nodiscard]] nlohmann::ordered_json to_json(const CheckReport& report);
[[nodiscard]] CheckReport report_from_json(const nlohmann::ordered_json& json);

enum class SignalFamily { Constant, Impulse, Random };

[[nodiscard]] std::string_view to_string(SignalFamily family) noexcept;
/// "constant", "impulse" or "random"; throws DomainError otherwise.
[[nodiscard]] SignalFamily parse_family(std::string_view text);

/// Test signal of length n. Random draws use derive_seed(seed, n), so the
/// same (seed, n) yields the same signal regardless of alpha.
[[nodiscard]] std::vector<Complex> make_signal(SignalFamily family,
                                               std::size_t n,
                                               std::uint64_t seed);

struct SweepRow {
  double alpha = 0.0;
  std::size_t n = 0;
  std::string signal_family;
  KernelConvention convention = KernelConvention::ConjugatePair;
  double roundtrip_max_abs = 0.0;
  double roundtrip_rms = 0.0;
  /// Empty on success; otherwise the envelope or guard message, with the
  /// residual fields NaN.
  std::string error;
};

struct SweepTable {
  std::uint64_t seed = 0;
  std::vector<SweepRow> rows;

  /// Header `alpha,n,signal_family,convention,roundtrip_max_abs,roundtrip_rms,status`.
  [[nodiscard]] std::string to_csv() const;
};

/// linearity: max_k |F[a f1 + b f2] - a F1 - b F2| <= 1e-10.
[[nodiscard]] CheckReport check_linearity(std::span<const Complex> f1,
                                          std::span<const Complex> f2,
                                          Complex a, Complex b,
                                          const TransformPlan& plan);

/// Sum over the window [j, j + N) equals the sum over [0, N). Requires a
/// Periodic approximation (MismatchError otherwise).
[[nodiscard]] CheckReport check_periodic_sum(
    const lfc::DiscreteApproximation& approx, std::int64_t j);

/// alpha = 1 Forward kernel against exp(-2 pi i n k / N), tolerance 1e-12.
[[nodiscard]] CheckReport check_dft_equivalence(std::size_t n,
                                                const MLConfig& cfg = {});

/// Round-trip residuals for every (alpha, N, family, convention), sorted by
/// (alpha, N). Envelope and guard failures become rows with `error` set.
[[nodiscard]] SweepTable residual_sweep(
    std::span<const double> alphas, std::span<const std::size_t> ns,
    std::span<const SignalFamily> families,
    std::span<const KernelConvention> conventions, const MLConfig& cfg = {},
    std::uint64_t seed = 0, PlanCache* cache = nullptr);

enum class TestFunction { One, Identity, Square };

[[nodiscard]] std::string_view to_string(TestFunction f) noexcept;

/// Quadrature on uniform partitions of [a, b] for each level N, with the
/// least-squares exponent of value ~ N^p. For f = 1 the exponent must equal
/// 1 - alpha within 1e-6; other functions report only, and at alpha = 1 also
/// the error against the exact integral and its observed order.
[[nodiscard]] CheckReport refinement_study(TestFunction f, double a, double b,
                                           FractalOrder order,
                                           std::span<const std::size_t> levels);

enum class Suite { All, Linearity, Periodic, Dft, Refinement };

/// Throws DomainError for unknown names.
[[nodiscard]] Suite parse_suite(std::string_view text);

struct SuiteReport {
  std::vector<CheckReport> checks;

  /// False if any applicable check failed.
  [[nodiscard]] bool passed() const noexcept;
  [[nodiscard]] std::vector<std::string> failures() const;
  [[nodiscard]] nlohmann::ordered_json to_json() const;
};

struct SuiteOptions {
  std::uint64_t seed = 20240607;
  /// Random draws per (alpha, N) cell of the linearity grid.
  int linearity_draws = 10;
  MLConfig cfg{};
  unsigned threads = 1;
};

[[nodiscard]] SuiteReport run_suite(Suite suite, const SuiteOptions& options = {});

}  // namespace dyft::analysis
