#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dyft/types.hpp"

namespace dyft::cli {

/// Malformed or missing user input. Maps to exit code 2.
class InputError : public Error {
 public:
  using Error::Error;
};

/// `index,re,im` CSV: indices 0..N-1 exactly once, ascending, N >= 1.
[[nodiscard]] std::vector<Complex> parse_signal_csv(const std::string& text);
[[nodiscard]] std::vector<Complex> read_signal_csv(
    const std::filesystem::path& path);

/// Components are written with 17 significant digits, so reading back is exact.
[[nodiscard]] std::string format_signal_csv(std::span<const Complex> values);
void write_signal_csv(const std::filesystem::path& path,
                      std::span<const Complex> values);

/// The JSON metadata file that accompanies `csv`: `<csv>.json`.
[[nodiscard]] std::filesystem::path sidecar_path(
    const std::filesystem::path& csv);

/// Throws InputError when the file is missing or is not a JSON object.
[[nodiscard]] nlohmann::ordered_json read_json_file(
    const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path,
                     const nlohmann::ordered_json& json);

/// Partition points from a one-column CSV with header `t`.
[[nodiscard]] std::vector<double> read_partition_csv(
    const std::filesystem::path& path);

/// Settings shared by the commands; `--config run.json` supplies defaults that
/// explicit flags override.
struct RunConfig {
  std::optional<double> alpha;
  KernelConvention convention = KernelConvention::ConjugatePair;
  MLConfig ml{};
  /// 0 means one worker per hardware thread ("auto").
  unsigned threads = 1;

  /// Accepts keys alpha, convention, rel_tol, max_terms, magnitude_guard,
  /// max_precision_bits, threads (integer or "auto"). Unknown keys and
  /// invalid values throw InputError.
  static RunConfig from_json(const nlohmann::ordered_json& json);
};

}  // namespace dyft::cli
