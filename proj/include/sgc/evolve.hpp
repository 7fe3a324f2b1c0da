#pragma once

#include <cmath>
#include <string>

#include "sgc/density_matrix.hpp"
#include "sgc/equations.hpp"
#include "sgc/errors.hpp"
#include "sgc/params.hpp"

namespace sgc {

/// Default horizon and step of the time-integration oracle (units of 1/gamma_unit).
inline constexpr double kOracleHorizon = 200.0;
inline constexpr double kOracleStep = 0.005;
/// Any element larger than this in magnitude is treated as divergence.
inline constexpr double kDivergenceBound = 10.0;

/// Classical fourth-order Runge-Kutta integration of eom_rhs() from rho0.
/// The interval is split into ceil(t_final / dt) equal steps, so the last step
/// lands exactly on t_final.
inline DensityMatrix evolve(const SystemParams& params, const DensityMatrix& rho0, double t_final,
                            double dt) {
  validate(params);
  if (!(dt > 0.0) || !(t_final >= 0.0) || !std::isfinite(t_final)) {
    throw Error(ErrorKind::Domain, "evolve: need dt > 0 and finite t_final >= 0");
  }
  if (t_final == 0.0) return rho0;

  const auto steps = static_cast<long>(std::ceil(t_final / dt));
  const double h = t_final / static_cast<double>(steps);

  DensityMatrix rho = rho0;
  for (long n = 0; n < steps; ++n) {
    const DensityMatrix k1 = eom_rhs(params, rho);
    const DensityMatrix k2 = eom_rhs(params, rho + (0.5 * h) * k1);
    const DensityMatrix k3 = eom_rhs(params, rho + (0.5 * h) * k2);
    const DensityMatrix k4 = eom_rhs(params, rho + h * k3);
    rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double mag = rho.max_abs();
    if (!(mag <= kDivergenceBound)) {
      throw Error(ErrorKind::StepUnstable, "state magnitude " + std::to_string(mag) +
                                               " at t = " + std::to_string((n + 1) * h));
    }
  }
  return rho;
}

inline DensityMatrix evolve(const SystemParams& params, const DensityMatrix& rho0) {
  return evolve(params, rho0, kOracleHorizon, kOracleStep);
}

}  // namespace sgc
