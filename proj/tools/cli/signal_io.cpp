#include "signal_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dyft::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

double parse_real(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw InputError("line " + std::to_string(line_no) + ": '" +
                     std::string(field) + "' is not a finite number");
  }
  return value;
}

long long parse_index(std::string_view field, std::size_t line_no) {
  long long value = 0;
  const auto* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw InputError("line " + std::to_string(line_no) + ": '" +
                     std::string(field) + "' is not an integer index");
  }
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

// Non-empty lines with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(
    std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> lines;
  std::size_t line_no = 0;
  for (auto field : split(text, '\n')) {
    ++line_no;
    if (!field.empty()) lines.emplace_back(line_no, field);
  }
  return lines;
}

}  // namespace

std::vector<Complex> parse_signal_csv(const std::string& text) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw InputError("signal file is empty");
  if (lines.front().second != "index,re,im") {
    throw InputError("signal file must start with the header 'index,re,im'");
  }
  if (lines.size() == 1) throw InputError("signal file has no samples");
  std::vector<Complex> values;
  values.reserve(lines.size() - 1);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [line_no, line] = lines[i];
    const auto fields = split(line, ',');
    if (fields.size() != 3) {
      throw InputError("line " + std::to_string(line_no) +
                       ": expected 3 fields, got " +
                       std::to_string(fields.size()));
    }
    const long long index = parse_index(fields[0], line_no);
    const auto expected = static_cast<long long>(values.size());
    if (index < expected) {
      throw InputError("line " + std::to_string(line_no) + ": index " +
                       std::to_string(index) + " is duplicated or out of order");
    }
    if (index > expected) {
      throw InputError("line " + std::to_string(line_no) + ": index " +
                       std::to_string(index) + " leaves a gap (expected " +
                       std::to_string(expected) + ")");
    }
    values.emplace_back(parse_real(fields[1], line_no),
                        parse_real(fields[2], line_no));
  }
  return values;
}

std::vector<Complex> read_signal_csv(const std::filesystem::path& path) {
  try {
    return parse_signal_csv(read_file(path));
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

std::string format_signal_csv(std::span<const Complex> values) {
  std::string out = "index,re,im\n";
  char buffer[96];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buffer, sizeof buffer, "%zu,%.17g,%.17g\n", i,
                  values[i].real(), values[i].imag());
    out += buffer;
  }
  return out;
}

void write_signal_csv(const std::filesystem::path& path,
                      std::span<const Complex> values) {
  write_file(path, format_signal_csv(values));
}

std::filesystem::path sidecar_path(const std::filesystem::path& csv) {
  return std::filesystem::path(csv.string() + ".json");
}

nlohmann::ordered_json read_json_file(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) {
    throw InputError("metadata file '" + path.string() + "' is missing");
  }
  nlohmann::ordered_json json;
  try {
    json = nlohmann::ordered_json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
  if (!json.is_object()) {
    throw InputError("'" + path.string() + "' must hold a JSON object");
  }
  return json;
}

void write_json_file(const std::filesystem::path& path,
                     const nlohmann::ordered_json& json) {
  write_file(path, json.dump(2) + "\n");
}

std::vector<double> read_partition_csv(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  const auto lines = lines_of(text);
  if (lines.empty() || lines.front().second != "t") {
    throw InputError(path.string() + ": partition file must start with 't'");
  }
  std::vector<double> points;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    points.push_back(parse_real(lines[i].second, lines[i].first));
  }
  return points;
}

RunConfig RunConfig::from_json(const nlohmann::ordered_json& json) {
  if (!json.is_object()) throw InputError("config must be a JSON object");
  RunConfig cfg;
  try {
    for (const auto& [key, value] : json.items()) {
      if (key == "alpha") {
        cfg.alpha = value.get<double>();
      } else if (key == "convention") {
        cfg.convention = parse_convention(value.get<std::string>());
      } else if (key == "rel_tol") {
        cfg.ml.rel_tol = value.get<double>();
      } else if (key == "max_terms") {
        cfg.ml.max_terms = value.get<int>();
      } else if (key == "magnitude_guard") {
        cfg.ml.magnitude_guard = value.get<double>();
      } else if (key == "max_precision_bits") {
        cfg.ml.max_precision_bits = value.get<int>();
      } else if (key == "threads") {
        if (value.is_string()) {
          if (value.get<std::string>() != "auto") {
            throw InputError("threads must be an integer or \"auto\"");
          }
          cfg.threads = 0;
        } else {
          const int threads = value.get<int>();
          if (threads < 1) throw InputError("threads must be at least 1");
          cfg.threads = static_cast<unsigned>(threads);
        }
      } else {
        throw InputError("unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid config value: ") + e.what());
  } catch (const DomainError& e) {
    throw InputError(e.what());
  }
  return cfg;
}

}  // namespace dyft::cli
