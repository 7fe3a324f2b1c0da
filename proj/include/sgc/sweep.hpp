#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <optional>
#include <string_view>
#include <thread>
#include <vector>

#include "sgc/errors.hpp"
#include "sgc/params.hpp"
#include "sgc/response.hpp"

namespace sgc {

enum class SweepAxis { Detuning, Alignment };

constexpr std::string_view to_string(SweepAxis a) noexcept {
  return a == SweepAxis::Detuning ? "delta_p" : "p_align";
}

/// Closed interval [start, end] of axis values; both ends lie on the grid.
struct Band {
  double start = 0.0;
  double end = 0.0;
  bool operator==(const Band&) const = default;
};

struct PointFailure {
  double axis_value = 0.0;
  ErrorKind kind = ErrorKind::Domain;
  std::string message;
};

/// Response over a 1-D grid. `records[i]` is empty exactly when grid point i
/// failed; the failure is listed in `failures`.
struct SweepTable {
  SweepAxis axis = SweepAxis::Detuning;
  std::vector<double> grid;
  std::vector<std::optional<ResponseRecord>> records;
  std::vector<Band> bands;
  std::vector<PointFailure> failures;
};

/// Guard keeping alignment sweeps away from the DegenerateProbe point p = 1.
inline constexpr double kAlignmentGuard = 1e-6;

/// `steps` points from lo to hi inclusive; a single step yields {lo}.
inline std::vector<double> uniform_grid(double lo, double hi, std::size_t steps) {
  std::vector<double> grid(steps);
  if (steps == 1) {
    grid[0] = lo;
    return grid;
  }
  const double span = hi - lo;
  const auto last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) grid[i] = lo + span * (static_cast<double>(i) / last);
  grid.back() = hi;
  return grid;
}

/// Maximal runs of consecutive LeftHanded records. Failed points break runs.
inline std::vector<Band> detect_bands(const SweepTable& table) {
  std::vector<Band> bands;
  std::optional<std::size_t> run_start;
  const std::size_t n = std::min(table.grid.size(), table.records.size());
  for (std::size_t i = 0; i <= n; ++i) {
    const bool lh = i < n && table.records[i] &&
                    table.records[i]->handedness == Handedness::LeftHanded;
    if (lh && !run_start) run_start = i;
    if (!lh && run_start) {
      bands.push_back({table.grid[*run_start], table.grid[i - 1]});
      run_start.reset();
    }
  }
  return bands;
}

struct SweepExtrema {
  double min_re_n = 0.0;
  double min_re_n_at = 0.0;
  double max_abs_im_n = 0.0;
  double max_abs_im_n_at = 0.0;
  double min_re_eps = 0.0;
  double min_re_eps_at = 0.0;
  double min_re_mu = 0.0;
  double min_re_mu_at = 0.0;
};

/// Grid-level extrema over the successful records.
inline SweepExtrema find_extrema(const SweepTable& table) {
  SweepExtrema ex;
  bool any = false;
  for (std::size_t i = 0; i < table.records.size(); ++i) {
    if (!table.records[i]) continue;
    const ResponseRecord& r = *table.records[i];
    const double x = table.grid[i];
    const double im_n = std::abs(r.n_index.imag());
    if (!any || r.n_index.real() < ex.min_re_n) ex.min_re_n = r.n_index.real(), ex.min_re_n_at = x;
    if (!any || im_n > ex.max_abs_im_n) ex.max_abs_im_n = im_n, ex.max_abs_im_n_at = x;
    if (!any || r.eps_r.real() < ex.min_re_eps) ex.min_re_eps = r.eps_r.real(), ex.min_re_eps_at = x;
    if (!any || r.mu_r.real() < ex.min_re_mu) ex.min_re_mu = r.mu_r.real(), ex.min_re_mu_at = x;
    any = true;
  }
  if (!any) throw Error(ErrorKind::EmptyTable, "no successful records in sweep table");
  return ex;
}

namespace detail {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once, so results written by index are order independent.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn,
                         unsigned threads) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> workers;
  workers.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&fn, n, t, threads] {
      for (std::size_t i = t; i < n; i += threads) fn(i);
    });
  }
}

inline SweepTable run_sweep(const SystemParams& base, SweepAxis axis, std::vector<double> grid,
                            unsigned threads) {
  SweepTable table;
  table.axis = axis;
  table.grid = std::move(grid);
  table.records.resize(table.grid.size());
  std::vector<std::optional<PointFailure>> failed(table.grid.size());

  parallel_for(
      table.grid.size(),
      [&](std::size_t i) {
        SystemParams params = base;
        (axis == SweepAxis::Detuning ? params.delta_p : params.p_align) = table.grid[i];
        try {
          table.records[i] = response_at(params);
        } catch (const Error& e) {
          failed[i] = PointFailure{table.grid[i], e.kind(), e.what()};
        }
      },
      threads);

  for (auto& f : failed) {
    if (f) table.failures.push_back(std::move(*f));
  }
  table.bands = detect_bands(table);
  return table;
}

}  // namespace detail

/// Response over a uniform detuning grid [d_min, d_max] (gamma units).
/// Per-point errors are collected, never thrown. threads = 0 picks the
/// hardware concurrency; results do not depend on the thread count.
inline SweepTable sweep_detuning(const SystemParams& params, double d_min, double d_max,
                                 std::size_t steps, unsigned threads = 0) {
  validate(params);
  if (steps < 1) throw Error(ErrorKind::Validation, "steps >= 1");
  if (!(d_min < d_max)) throw Error(ErrorKind::Validation, "d_min < d_max");
  return detail::run_sweep(params, SweepAxis::Detuning, uniform_grid(d_min, d_max, steps), threads);
}

/// Response over a uniform alignment grid with 0 <= p_min < p_max <= 1 - guard.
inline SweepTable sweep_alignment(const SystemParams& params, double p_min, double p_max,
                                  std::size_t steps, unsigned threads = 0,
                                  double guard = kAlignmentGuard) {
  validate(params);
  if (steps < 1) throw Error(ErrorKind::Validation, "steps >= 1");
  if (!(p_min >= 0.0 && p_min < p_max && p_max <= 1.0 - guard)) {
    throw Error(ErrorKind::Validation, "0 <= p_min < p_max <= 1 - guard");
  }
  return detail::run_sweep(params, SweepAxis::Alignment, uniform_grid(p_min, p_max, steps),
                           threads);
}

}  // namespace sgc
