#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "sgc/calibration.hpp"
#include "sgc/config.hpp"
#include "sgc/constants.hpp"
#include "sgc/errors.hpp"
#include "sgc/evolve.hpp"
#include "sgc/response.hpp"
#include "sgc/steady_state.hpp"
#include "sgc/sweep.hpp"
#include "sgc/version.hpp"

namespace sgc {

/// Fixed CSV column order; JSON records use the same field names.
inline const std::vector<std::string>& output_columns() {
  static const std::vector<std::string> cols{
      "axis_value", "re_eps",   "im_eps",   "re_mu",    "im_mu",    "re_n",
      "im_n",       "re_rho24", "im_rho24", "re_rho32", "im_rho32", "handedness"};
  return cols;
}

struct OracleCheck {
  double axis_value = 0.0;
  double max_deviation = 0.0;
  std::string error;  // non-empty when evolve() failed
};

struct RunResult {
  RunConfig config;
  SystemParams resolved;
  std::optional<CalibrationResult> calibration;
  SweepTable table;
  std::vector<OracleCheck> oracle;
  std::string data_path;
  std::string meta_path;
};

namespace detail {

inline std::vector<double> record_values(double axis, const ResponseRecord& r) {
  return {axis,           r.eps_r.real(),   r.eps_r.imag(),   r.mu_r.real(),
          r.mu_r.imag(),  r.n_index.real(), r.n_index.imag(), r.rho24.real(),
          r.rho24.imag(), r.rho32.real(),   r.rho32.imag()};
}

inline bool all_finite(const std::vector<double>& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Moves records with non-finite values into the failure list.
inline void route_non_finite(SweepTable& table) {
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    if (table.records[i] && !all_finite(record_values(table.grid[i], *table.records[i]))) {
      table.records[i].reset();
      table.failures.push_back({table.grid[i], ErrorKind::Domain, "non-finite response value"});
    }
  }
}

inline std::string render_csv(const SweepTable& table) {
  std::ostringstream os;
  const auto& cols = output_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << '\n';
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    if (!table.records[i]) continue;
    for (double v : record_values(table.grid[i], *table.records[i])) os << format_double(v) << ',';
    os << to_string(table.records[i]->handedness) << '\n';
  }
  return os.str();
}

inline std::string render_json(const SweepTable& table) {
  std::ostringstream os;
  const auto& cols = output_columns();
  os << '[';
  bool first = true;
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    if (!table.records[i]) continue;
    os << (first ? "\n  {" : ",\n  {");
    first = false;
    const auto values = record_values(table.grid[i], *table.records[i]);
    for (std::size_t c = 0; c < values.size(); ++c) {
      os << '"' << cols[c] << "\": " << format_double(values[c]) << ", ";
    }
    os << '"' << cols.back() << "\": \"" << to_string(table.records[i]->handedness) << "\"}";
  }
  os << (first ? "]\n" : "\n]\n");
  return os.str();
}

}  // namespace detail

/// Writes `contents` to a temporary sibling and renames it over `path`.
inline void write_file_atomic(const std::string& path, const std::string& contents) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error(ErrorKind::Io, "cannot open " + tmp.string());
    f << contents;
    f.flush();
    if (!f) throw Error(ErrorKind::Io, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw Error(ErrorKind::Io, "rename to " + target.string() + ": " + ec.message());
}

/// Metadata sidecar: configuration (re-parseable by parse_config), resolved
/// physical parameters, constants, version, failures, bands and oracle checks.
inline std::string emit_metadata(const RunResult& result) {
  using json = nlohmann::ordered_json;
  json meta;
  meta["program"] = "sgc_lhm";
  meta["version"] = kVersion;

  json cfg = json::object();
  for (const auto& [k, v] : config_items(result.config)) cfg[k] = v;
  meta["config"] = cfg;

  const SystemParams& p = result.resolved;
  meta["resolved_params"] = {
      {"gamma_unit", p.gamma_unit},       {"gamma2", p.gamma2},
      {"gamma3", p.gamma3},               {"gamma4", p.gamma4},
      {"omega1_bare", p.omega1_bare},     {"omegap_bare", p.omegap_bare},
      {"p_align", p.p_align},             {"delta_p", p.delta_p},
      {"density_n", p.density_n},         {"d42", p.d42},
      {"mu23", p.mu23},                   {"equations", std::string(to_string(p.equation_variant))},
  };
  meta["constants"] = {{"hbar", constants::hbar},
                       {"epsilon0", constants::epsilon0},
                       {"mu0", constants::mu0},
                       {"c", constants::c}};
  if (result.calibration) {
    const auto& c = *result.calibration;
    meta["calibration"] = {{"d42", c.d42},
                           {"mu23", c.mu23},
                           {"re_eps_near_one", c.re_eps_near_one},
                           {"re_mu_at_crossing", c.re_mu_at_crossing}};
  } else {
    meta["calibration"] = nullptr;
  }
  meta["axis"] = std::string(to_string(result.table.axis));
  std::size_t rows = 0;
  for (const auto& r : result.table.records) rows += r ? 1 : 0;
  meta["rows"] = rows;
  double max_condition = 0.0;
  for (const auto& r : result.table.records) {
    if (r) max_condition = std::max(max_condition, r->condition);
  }
  meta["max_condition"] = max_condition;
  meta["ill_conditioned"] = max_condition > kConditionWarning;

  json failures = json::array();
  for (const auto& f : result.table.failures) {
    failures.push_back({{"axis_value", f.axis_value},
                        {"kind", std::string(to_string(f.kind))},
                        {"message", f.message}});
  }
  meta["failures"] = failures;

  json bands = json::array();
  for (const auto& b : result.table.bands) bands.push_back({b.start, b.end});
  meta["left_handed_bands"] = bands;

  if (result.config.oracle) {
    json checks = json::array();
    double worst = 0.0;
    for (const auto& o : result.oracle) {
      json item = {{"axis_value", o.axis_value}, {"max_deviation", o.max_deviation}};
      if (!o.error.empty()) item["error"] = o.error;
      worst = std::max(worst, o.max_deviation);
      checks.push_back(item);
    }
    meta["oracle"] = {{"t_final", kOracleHorizon},
                      {"dt", kOracleStep},
                      {"max_deviation", worst},
                      {"points", checks}};
  } else {
    meta["oracle"] = nullptr;
  }
  return meta.dump(2) + "\n";
}

/// Executes the configured computation and writes the data file plus
/// `<out>.meta.json`. Sweep points fail softly; a failing single point throws.
inline RunResult run(const RunConfig& config, unsigned threads = 0) {
  validate(config);
  RunResult result;
  result.config = config;
  result.resolved = config.params;
  if (config.calibrate) {
    result.calibration = calibrate(config.params);
    result.resolved = with_calibration(config.params, *result.calibration);
  }

  switch (config.mode) {
    case RunMode::Point: {
      result.table.axis = SweepAxis::Detuning;
      result.table.grid = {result.resolved.delta_p};
      result.table.records = {response_at(result.resolved)};
      result.table.bands = detect_bands(result.table);
      break;
    }
    case RunMode::SweepDetuning:
      result.table = sweep_detuning(result.resolved, config.d_min, config.d_max, config.steps, threads);
      break;
    case RunMode::SweepAlignment:
      result.table = sweep_alignment(result.resolved, config.p_min, config.p_max, config.steps, threads);
      break;
  }
  detail::route_non_finite(result.table);
  if (config.mode == RunMode::Point && !result.table.records.front()) {
    throw Error(ErrorKind::Domain, "single point produced non-finite values");
  }
  result.table.bands = detect_bands(result.table);

  if (config.oracle) {
    const SweepTable& t = result.table;
    result.oracle.resize(t.grid.size());
    detail::parallel_for(
        t.grid.size(),
        [&](std::size_t i) {
          OracleCheck& check = result.oracle[i];
          check.axis_value = t.grid[i];
          SystemParams q = result.resolved;
          (t.axis == SweepAxis::Detuning ? q.delta_p : q.p_align) = t.grid[i];
          try {
            const DensityMatrix fixed = solve_fixed_point(q).rho;
            const DensityMatrix late = evolve(q, DensityMatrix::ground_state());
            check.max_deviation = fixed.max_abs_difference(late);
          } catch (const Error& e) {
            check.error = e.what();
          }
        },
        threads);
  }

  result.data_path = config.out;
  result.meta_path = config.out + ".meta.json";
  write_file_atomic(result.data_path, config.format == OutputFormat::Csv
                                          ? detail::render_csv(result.table)
                                          : detail::render_json(result.table));
  write_file_atomic(result.meta_path, emit_metadata(result));
  return result;
}

}  // namespace sgc
