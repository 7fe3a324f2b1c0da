#pragma once

#include <cmath>
#include <complex>
#include <string_view>

#include "sgc/constants.hpp"
#include "sgc/density_matrix.hpp"
#include "sgc/errors.hpp"
#include "sgc/params.hpp"
#include "sgc/steady_state.hpp"

namespace sgc {

enum class Handedness { LeftHanded, NegEpsOnly, NegMuOnly, RightHanded };

constexpr std::string_view to_string(Handedness h) noexcept {
  switch (h) {
    case Handedness::LeftHanded: return "LeftHanded";
    case Handedness::NegEpsOnly: return "NegEpsOnly";
    case Handedness::NegMuOnly: return "NegMuOnly";
    case Handedness::RightHanded: return "RightHanded";
  }
  return "RightHanded";
}

/// Macroscopic response at one operating point. Polarizabilities are
/// volumes in m^3 so that N*gamma is dimensionless.
struct ResponseRecord {
  double delta_p = 0.0;
  double p_align = 0.0;
  complex rho24;
  complex rho32;
  complex gamma_e;
  complex gamma_m;
  complex eps_r;
  complex mu_r;
  complex n_index;
  Handedness handedness = Handedness::RightHanded;
  double condition = 0.0;  // 1-norm condition of the steady-state solve
};

/// Clausius-Mossotti denominators closer than this to zero are poles.
inline constexpr double kLocalFieldPoleTolerance = 1e-12;

namespace detail {

inline double probe_rabi_si(const SystemParams& params) {
  const double op = probe_rabi(params);
  if (op == 0.0) {
    throw Error(ErrorKind::DegenerateProbe,
                "effective probe Rabi frequency vanishes (|p_align| = 1 or zero probe)");
  }
  return op * params.gamma_unit;
}

}  // namespace detail

/// gamma_e = 2 d42^2 rho24 / (eps0 hbar Omega_p), with Omega_p the effective
/// probe Rabi frequency in rad/s.
inline complex electric_polarizability(complex rho24, const SystemParams& params) {
  const double omega = detail::probe_rabi_si(params);
  return (2.0 * params.d42 * params.d42 / (constants::epsilon0 * constants::hbar * omega)) *
         rho24;
}

/// gamma_m = 2 mu0 mu23 rho32 / B_p with B_p = E_p / c and E_p = hbar Omega_p / d42.
/// mu23 is treated as an effective (calibrated) magnetic dipole.
inline complex magnetic_polarizability(complex rho32, const SystemParams& params) {
  const double omega = detail::probe_rabi_si(params);
  return (2.0 * constants::mu0 * params.mu23 * constants::c * params.d42 /
          (constants::hbar * omega)) *
         rho32;
}

/// eps_r = 1 + chi_e with chi_e = N gamma_e / (1 - N gamma_e / 3).
inline complex permittivity(complex gamma_e, double density_n) {
  const complex x = density_n * gamma_e;
  const complex denom = 1.0 - x / 3.0;
  if (std::abs(denom) <= kLocalFieldPoleTolerance) {
    throw Error(ErrorKind::LocalFieldPole, "N*gamma_e at the Clausius-Mossotti pole");
  }
  return 1.0 + x / denom;
}

/// mu_r = (1 + 2/3 N gamma_m) / (1 - 1/3 N gamma_m).
inline complex permeability(complex gamma_m, double density_n) {
  const complex x = density_n * gamma_m;
  const complex denom = 1.0 - x / 3.0;
  if (std::abs(denom) <= kLocalFieldPoleTolerance) {
    throw Error(ErrorKind::LocalFieldPole, "N*gamma_m at the Clausius-Mossotti pole");
  }
  return (1.0 + 2.0 * x / 3.0) / denom;
}

/// Magnetic Clausius-Mossotti relation, inverting permeability():
/// gamma_m = (mu_r - 1) / (N (2/3 + mu_r / 3)).
inline complex magnetic_polarizability_from_permeability(complex mu_r, double density_n) {
  return (mu_r - 1.0) / (density_n * (2.0 / 3.0 + mu_r / 3.0));
}

/// n = sqrt(eps) sqrt(mu) on principal branches, sign fixed by Im(n) >= 0.
/// In the lossless limit (Im n == 0) the sign is negative exactly when both
/// real parts are negative.
inline complex refractive_index(complex eps_r, complex mu_r) {
  complex n = std::sqrt(eps_r) * std::sqrt(mu_r);
  if (n.imag() < 0.0) {
    n = -n;
  } else if (n.imag() == 0.0) {
    const bool double_negative = eps_r.real() < 0.0 && mu_r.real() < 0.0;
    n = complex(double_negative ? -std::abs(n.real()) : std::abs(n.real()), 0.0);
  }
  return n;
}

/// Sign classification of the real parts; zero counts as non-negative.
inline Handedness classify_handedness(complex eps_r, complex mu_r) {
  const bool neg_eps = eps_r.real() < 0.0;
  const bool neg_mu = mu_r.real() < 0.0;
  if (neg_eps && neg_mu) return Handedness::LeftHanded;
  if (neg_eps) return Handedness::NegEpsOnly;
  if (neg_mu) return Handedness::NegMuOnly;
  return Handedness::RightHanded;
}

/// Steady state followed by the local-field corrected response.
inline ResponseRecord response_at(const SystemParams& params) {
  validate(params);
  if (std::abs(params.p_align) >= 1.0) {
    throw Error(ErrorKind::DegenerateProbe, "response undefined at |p_align| = 1");
  }
  const SteadyStateSolution sol = solve_fixed_point(params);
  const DensityMatrix rho = steady_state_from(sol);

  ResponseRecord rec;
  rec.condition = sol.condition;
  rec.delta_p = params.delta_p;
  rec.p_align = params.p_align;
  rec.rho24 = rho(1, 3);
  rec.rho32 = rho(2, 1);
  rec.gamma_e = electric_polarizability(rec.rho24, params);
  rec.gamma_m = magnetic_polarizability(rec.rho32, params);
  rec.eps_r = permittivity(rec.gamma_e, params.density_n);
  rec.mu_r = permeability(rec.gamma_m, params.density_n);
  rec.n_index = refractive_index(rec.eps_r, rec.mu_r);
  rec.handedness = classify_handedness(rec.eps_r, rec.mu_r);
  return rec;
}

}  // namespace sgc
