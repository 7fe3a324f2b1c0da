#pragma once

#include <cmath>
#include <string>

#include <Eigen/LU>

#include "sgc/density_matrix.hpp"
#include "sgc/errors.hpp"
#include "sgc/generator.hpp"
#include "sgc/params.hpp"

namespace sgc {

/// 1-norm condition number above which a solve is reported as ill-conditioned.
inline constexpr double kConditionWarning = 1e12;
/// Above this the trace-augmented system is treated as rank deficient.
inline constexpr double kConditionSingular = 1e14;
/// Populations must lie in [-kPopulationTolerance, 1 + kPopulationTolerance].
inline constexpr double kPopulationTolerance = 1e-6;

struct SteadyStateSolution {
  DensityMatrix rho;
  double condition = 0.0;        // ||L'||_1 * ||L'^-1||_1
  double residual = 0.0;         // ||L x||_2 over the 15 rows not replaced by the trace row
  double generator_norm = 0.0;   // ||L||_1

  bool ill_conditioned() const { return condition > kConditionWarning; }
};

/// Algebraic fixed point of the generator with the rho11 row replaced by the
/// trace constraint. No physicality check is applied, so the fixed point of
/// the dynamically unstable PaperLiteral equations can still be inspected.
inline SteadyStateSolution solve_fixed_point(const SystemParams& params) {
  validate(params);
  const GeneratorMatrix gen = build_generator(params);

  RealMatrix16 augmented = gen.entries;
  augmented.row(0).setZero();
  augmented.row(0).head<4>().setOnes();
  RealVector16 rhs = RealVector16::Zero();
  rhs[0] = 1.0;

  const Eigen::PartialPivLU<RealMatrix16> lu(augmented);
  const RealMatrix16 inverse = lu.inverse();
  const double norm = augmented.cwiseAbs().colwise().sum().maxCoeff();
  const double inv_norm = inverse.cwiseAbs().colwise().sum().maxCoeff();
  const double condition = norm * inv_norm;
  if (!std::isfinite(condition) || condition > kConditionSingular) {
    throw Error(ErrorKind::SingularSystem,
                "trace-augmented generator is rank deficient (condition " +
                    std::to_string(condition) + ")");
  }

  RealVector16 x = lu.solve(rhs);
  x /= x.head<4>().sum();

  SteadyStateSolution sol;
  sol.rho = unvectorize(x);
  sol.condition = condition;
  sol.residual = (gen.entries * x).tail<15>().norm();
  sol.generator_norm = gen.entries.cwiseAbs().colwise().sum().maxCoeff();
  return sol;
}

/// Accepts a fixed point only if every population lies in [-1e-6, 1 + 1e-6].
inline const DensityMatrix& steady_state_from(const SteadyStateSolution& sol) {
  for (int i = 0; i < kLevels; ++i) {
    const double pop = sol.rho(i, i).real();
    if (!(pop >= -kPopulationTolerance && pop <= 1.0 + kPopulationTolerance)) {
      throw Error(ErrorKind::NonPhysicalState,
                  "population rho" + std::to_string(i + 1) + std::to_string(i + 1) + " = " +
                      std::to_string(pop));
    }
  }
  return sol.rho;
}

/// Stationary density matrix, rejecting non-physical fixed points.
inline DensityMatrix steady_state(const SystemParams& params) {
  return steady_state_from(solve_fixed_point(params));
}

}  // namespace sgc
