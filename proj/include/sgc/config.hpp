#pragma once

#include <array>
#include <cerrno>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <cstdlib>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "sgc/errors.hpp"
#include "sgc/params.hpp"
#include "sgc/sweep.hpp"

namespace sgc {

enum class RunMode { Point, SweepDetuning, SweepAlignment };
enum class OutputFormat { Csv, Json };

constexpr std::string_view to_string(RunMode m) noexcept {
  switch (m) {
    case RunMode::Point: return "point";
    case RunMode::SweepDetuning: return "sweep-detuning";
    case RunMode::SweepAlignment: return "sweep-p";
  }
  return "point";
}

constexpr std::string_view to_string(OutputFormat f) noexcept {
  return f == OutputFormat::Csv ? "csv" : "json";
}

struct RunConfig {
  SystemParams params;
  RunMode mode = RunMode::Point;
  double d_min = -20.0;
  double d_max = 20.0;
  double p_min = 0.0;
  double p_max = 1.0 - kAlignmentGuard;
  std::size_t steps = 401;
  std::string out = "sgc_output.csv";
  OutputFormat format = OutputFormat::Csv;
  bool oracle = false;
  bool calibrate = false;

  bool operator==(const RunConfig&) const = default;
};

/// A single key = value assignment and where it came from ("line 3",
/// "--steps"), used in error messages.
struct ConfigEntry {
  std::string source;
  std::string key;
  std::string value;
};

/// Shortest text that parses back to exactly the same double.
inline std::string format_double(double v) {
  std::array<char, 40> buf{};
  std::snprintf(buf.data(), buf.size(), "%.17g", v);
  return buf.data();
}

namespace detail {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

[[noreturn]] inline void parse_fail(const ConfigEntry& e, const std::string& why) {
  throw Error(ErrorKind::Parse, e.source + ": " + why);
}

inline double parse_double(const ConfigEntry& e) {
  const std::string text(e.value);
  if (text.empty()) parse_fail(e, "empty value for '" + e.key + "'");
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() + text.size() || errno == ERANGE) {
    parse_fail(e, "'" + e.key + "' expects a number, got '" + text + "'");
  }
  return v;
}

inline std::size_t parse_count(const ConfigEntry& e) {
  const std::string text(e.value);
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
    parse_fail(e, "'" + e.key + "' expects a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(std::stoull(text));
}

inline bool parse_bool(const ConfigEntry& e) {
  const std::string& v = e.value;
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  parse_fail(e, "'" + e.key + "' expects true/false, got '" + v + "'");
}

inline void apply_entry(RunConfig& cfg, const ConfigEntry& e) {
  SystemParams& p = cfg.params;
  const std::string& k = e.key;
  if (k == "gamma_unit") p.gamma_unit = parse_double(e);
  else if (k == "gamma2") p.gamma2 = parse_double(e);
  else if (k == "gamma3") p.gamma3 = parse_double(e);
  else if (k == "gamma4") p.gamma4 = parse_double(e);
  else if (k == "omega1_bare") p.omega1_bare = parse_double(e);
  else if (k == "omegap_bare") p.omegap_bare = parse_double(e);
  else if (k == "p_align") p.p_align = parse_double(e);
  else if (k == "delta_p") p.delta_p = parse_double(e);
  else if (k == "density_n") p.density_n = parse_double(e);
  else if (k == "d42") p.d42 = parse_double(e);
  else if (k == "mu23") p.mu23 = parse_double(e);
  else if (k == "equations") {
    if (e.value == "paper") p.equation_variant = EquationVariant::PaperLiteral;
    else if (e.value == "corrected") p.equation_variant = EquationVariant::Corrected;
    else parse_fail(e, "'equations' must be paper or corrected");
  } else if (k == "mode") {
    if (e.value == "point") cfg.mode = RunMode::Point;
    else if (e.value == "sweep-detuning") cfg.mode = RunMode::SweepDetuning;
    else if (e.value == "sweep-p") cfg.mode = RunMode::SweepAlignment;
    else parse_fail(e, "'mode' must be point, sweep-detuning or sweep-p");
  } else if (k == "d_min") cfg.d_min = parse_double(e);
  else if (k == "d_max") cfg.d_max = parse_double(e);
  else if (k == "p_min") cfg.p_min = parse_double(e);
  else if (k == "p_max") cfg.p_max = parse_double(e);
  else if (k == "steps") cfg.steps = parse_count(e);
  else if (k == "out") {
    if (e.value.empty()) parse_fail(e, "'out' must not be empty");
    cfg.out = e.value;
  } else if (k == "format") {
    if (e.value == "csv") cfg.format = OutputFormat::Csv;
    else if (e.value == "json") cfg.format = OutputFormat::Json;
    else parse_fail(e, "'format' must be csv or json");
  } else if (k == "oracle") cfg.oracle = parse_bool(e);
  else if (k == "calibrate") cfg.calibrate = parse_bool(e);
  else parse_fail(e, "unknown key '" + k + "'");
}

inline std::vector<ConfigEntry> entries_from_lines(std::string_view text) {
  std::vector<ConfigEntry> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string source = "line " + std::to_string(line_no);
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::Parse, source + ": expected 'key = value'");
    }
    ConfigEntry e{source, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1)))};
    if (e.key.empty()) throw Error(ErrorKind::Parse, source + ": missing key");
    entries.push_back(std::move(e));
  }
  return entries;
}

// Metadata sidecars carry the resolved configuration under "config".
inline std::vector<ConfigEntry> entries_from_json(std::string_view text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& err) {
    throw Error(ErrorKind::Parse, std::string("json: ") + err.what());
  }
  const auto& section = doc.contains("config") ? doc.at("config") : doc;
  if (!section.is_object()) throw Error(ErrorKind::Parse, "json: 'config' must be an object");
  std::vector<ConfigEntry> entries;
  for (const auto& [key, value] : section.items()) {
    if (!value.is_string()) {
      throw Error(ErrorKind::Parse, "json key '" + key + "': values must be strings");
    }
    entries.push_back({"json key '" + key + "'", key, value.get<std::string>()});
  }
  return entries;
}

}  // namespace detail

/// Throws ErrorKind::Validation naming the first violated invariant.
inline void validate(const RunConfig& cfg) {
  validate(cfg.params);
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::Validation, what);
  };
  require(cfg.steps >= 1, "steps >= 1");
  require(std::isfinite(cfg.d_min) && std::isfinite(cfg.d_max) && cfg.d_min < cfg.d_max,
          "d_min < d_max");
  require(cfg.p_min >= 0.0 && cfg.p_min < cfg.p_max && cfg.p_max <= 1.0 - kAlignmentGuard,
          "0 <= p_min < p_max <= 1 - 1e-6");
  if (cfg.mode == RunMode::Point) {
    require(std::abs(cfg.params.p_align) < 1.0, "|p_align| < 1 for a point evaluation");
  }
}

/// Builds a RunConfig from built-in defaults, then `text` (key = value lines
/// with # comments, or a metadata JSON document), then `overrides` (CLI flags).
/// Later sources win.
inline RunConfig parse_config(std::string_view text, std::span<const ConfigEntry> overrides = {}) {
  RunConfig cfg;
  const std::string_view body = detail::trim(text);
  const auto entries = !body.empty() && body.front() == '{' ? detail::entries_from_json(body)
                                                            : detail::entries_from_lines(text);
  for (const auto& e : entries) detail::apply_entry(cfg, e);
  for (const auto& e : overrides) detail::apply_entry(cfg, e);
  validate(cfg);
  return cfg;
}

/// Every configuration key with its resolved value, in a fixed order.
inline std::vector<std::pair<std::string, std::string>> config_items(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  return {
      {"mode", std::string(to_string(cfg.mode))},
      {"equations", std::string(to_string(p.equation_variant))},
      {"gamma_unit", format_double(p.gamma_unit)},
      {"gamma2", format_double(p.gamma2)},
      {"gamma3", format_double(p.gamma3)},
      {"gamma4", format_double(p.gamma4)},
      {"omega1_bare", format_double(p.omega1_bare)},
      {"omegap_bare", format_double(p.omegap_bare)},
      {"p_align", format_double(p.p_align)},
      {"delta_p", format_double(p.delta_p)},
      {"density_n", format_double(p.density_n)},
      {"d42", format_double(p.d42)},
      {"mu23", format_double(p.mu23)},
      {"d_min", format_double(cfg.d_min)},
      {"d_max", format_double(cfg.d_max)},
      {"p_min", format_double(cfg.p_min)},
      {"p_max", format_double(cfg.p_max)},
      {"steps", std::to_string(cfg.steps)},
      {"out", cfg.out},
      {"format", std::string(to_string(cfg.format))},
      {"oracle", cfg.oracle ? "true" : "false"},
      {"calibrate", cfg.calibrate ? "true" : "false"},
  };
}

/// key = value text accepted back by parse_config().
inline std::string emit_config(const RunConfig& cfg) {
  std::ostringstream os;
  for (const auto& [k, v] : config_items(cfg)) os << k << " = " << v << '\n';
  return os.str();
}

}  // namespace sgc
