#pragma once

#include <cmath>
#include <functional>

#include "sgc/errors.hpp"
#include "sgc/params.hpp"
#include "sgc/response.hpp"
#include "sgc/sweep.hpp"

namespace sgc {

/// Targets for fixing the two dipole moments, which only set absolute scales.
struct CalibrationTargets {
  double delta_p = 1e-16;               // near-resonant probe
  double p_near_one = 1.0 - kAlignmentGuard;
  double eps_target = -2.0;             // Re(eps_r) approached as p -> 1
  double eps_tolerance = 1e-6;
  double mu_crossing_p = 0.55;          // Re(mu_r) changes sign here
};

struct CalibrationResult {
  double d42 = 0.0;
  double mu23 = 0.0;
  double re_eps_near_one = 0.0;
  double re_mu_at_crossing = 0.0;
};

namespace detail {

// Bisection in log space for a decreasing f on [lo, hi] with f(lo) > 0 > f(hi).
// Returns the upper end of the final bracket, so f(result) <= 0.
inline double log_bisect(const std::function<double(double)>& f, double lo, double hi) {
  if (!(f(lo) > 0.0) || !(f(hi) <= 0.0)) {
    throw Error(ErrorKind::Domain, "calibration target not bracketed");
  }
  double a = std::log(lo);
  double b = std::log(hi);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    const double mid = 0.5 * (a + b);
    if (f(std::exp(mid)) > 0.0) {
      a = mid;
    } else {
      b = mid;
    }
  }
  return std::exp(b);
}

}  // namespace detail

/// Fixes d42, then mu23, with all other parameters taken from `params`.
///
/// Re(eps_r) tends to -2 from above as N*gamma_e grows (local-field
/// saturation), so d42 is the smallest dipole putting Re(eps_r) within
/// eps_tolerance of the target at p -> 1. mu23 then places the sign change of
/// Re(mu_r) at mu_crossing_p. Both searches are monotone.
inline CalibrationResult calibrate(const SystemParams& params,
                                   const CalibrationTargets& targets = {}) {
  SystemParams work = params;
  work.delta_p = targets.delta_p;

  auto re_eps = [&](double d42) {
    SystemParams q = work;
    q.d42 = d42;
    q.p_align = targets.p_near_one;
    return response_at(q).eps_r.real();
  };
  const double d42 = detail::log_bisect(
      [&](double d) { return re_eps(d) - (targets.eps_target + targets.eps_tolerance); }, 1e-33,
      1e-25);
  work.d42 = d42;

  auto re_mu = [&](double mu23) {
    SystemParams q = work;
    q.mu23 = mu23;
    q.p_align = targets.mu_crossing_p;
    return response_at(q).mu_r.real();
  };
  const double mu23 = detail::log_bisect(re_mu, 1e-3 * constants::bohr_magneton,
                                         1e4 * constants::bohr_magneton);

  CalibrationResult result;
  result.d42 = d42;
  result.mu23 = mu23;
  result.re_eps_near_one = re_eps(d42);
  result.re_mu_at_crossing = re_mu(mu23);
  return result;
}

inline SystemParams with_calibration(SystemParams params, const CalibrationResult& cal) {
  params.d42 = cal.d42;
  params.mu23 = cal.mu23;
  return params;
}

}  // namespace sgc
