#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "sgc/constants.hpp"
#include "sgc/errors.hpp"

namespace sgc {

/// Which printed form of the level-3 population equation to use.
/// `PaperLiteral` keeps the self-amplifying +2*gamma3*rho33 term exactly as
/// published; `Corrected` uses the damping form -2*gamma3*rho33.
enum class EquationVariant { PaperLiteral, Corrected };

constexpr std::string_view to_string(EquationVariant v) noexcept {
  return v == EquationVariant::PaperLiteral ? "paper" : "corrected";
}

/// Physical inputs of the four-level Y system.
///
/// Rates and frequencies are stored in units of `gamma_unit` (s^-1). The
/// half-rates gamma2..gamma4 are such that 2*gamma_i is the population decay
/// rate of level i. Effective Rabi frequencies are derived on demand via
/// effective_rabi(); only the bare values are stored.
struct SystemParams {
  double gamma_unit = 1.0e8;
  double gamma2 = 0.8;
  double gamma3 = 0.8;
  double gamma4 = 0.8;
  double omega1_bare = 10.0;
  double omegap_bare = 0.2;
  double p_align = 0.5;
  double delta_p = 0.0;
  double density_n = 5.0e24;               // m^-3
  double d42 = 1.0e-29;                    // C m
  double mu23 = constants::bohr_magneton;  // J T^-1
  EquationVariant equation_variant = EquationVariant::Corrected;

  bool operator==(const SystemParams&) const = default;
};

/// Omega * sqrt(1 - p^2): each field may drive only its own transition when
/// the two upper dipoles are partially aligned.
inline double effective_rabi(double omega_bare, double p_align) {
  if (!(std::abs(p_align) <= 1.0)) {
    throw Error(ErrorKind::Domain, "effective_rabi: |p_align| must be <= 1");
  }
  if (std::abs(p_align) == 1.0) return 0.0;
  return omega_bare * std::sqrt(1.0 - p_align * p_align);
}

inline double coupling_rabi(const SystemParams& params) {
  return effective_rabi(params.omega1_bare, params.p_align);
}

inline double probe_rabi(const SystemParams& params) {
  return effective_rabi(params.omegap_bare, params.p_align);
}

/// Strength of the cross-damping terms, p*sqrt(gamma3*gamma4).
inline double cross_damping(const SystemParams& params) {
  return params.p_align * std::sqrt(params.gamma3 * params.gamma4);
}

/// Throws ErrorKind::Validation naming the first violated invariant.
inline void validate(const SystemParams& params) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorKind::Validation, what);
  };
  auto finite = [](double v) { return std::isfinite(v); };
  require(finite(params.gamma_unit) && params.gamma_unit > 0.0, "gamma_unit > 0");
  require(finite(params.gamma2) && params.gamma2 > 0.0, "gamma2 > 0");
  require(finite(params.gamma3) && params.gamma3 > 0.0, "gamma3 > 0");
  require(finite(params.gamma4) && params.gamma4 > 0.0, "gamma4 > 0");
  require(finite(params.omega1_bare), "omega1_bare finite");
  require(finite(params.omegap_bare), "omegap_bare finite");
  require(finite(params.delta_p), "delta_p finite");
  require(std::abs(params.p_align) <= 1.0, "|p_align| <= 1");
  require(finite(params.density_n) && params.density_n > 0.0, "density_n > 0");
  require(finite(params.d42) && params.d42 > 0.0, "d42 > 0");
  require(finite(params.mu23) && params.mu23 > 0.0, "mu23 > 0");
}

}  // namespace sgc
