#pragma once

#include <complex>

#include "sgc/density_matrix.hpp"
#include "sgc/params.hpp"

namespace sgc {

/// Right-hand side of the rotating-wave density-matrix equations, in units of
/// gamma_unit. The nine published equations give rho11, rho33, rho44 and the
/// six upper-triangle coherences; rho22 is the trace-conserving completion and
/// the lower triangle is the Hermitian conjugate.
///
/// Terms proportional to p*sqrt(gamma3*gamma4) are the cross-damping
/// (spontaneously generated coherence) between the |3>->|2> and |4>->|2>
/// decay channels.
inline DensityMatrix eom_rhs(const SystemParams& params, const DensityMatrix& rho) {
  using namespace std::complex_literals;

  const double g2 = params.gamma2;
  const double g3 = params.gamma3;
  const double g4 = params.gamma4;
  const double o1 = coupling_rabi(params);
  const double op = probe_rabi(params);
  const double s = cross_damping(params);
  const double dp = params.delta_p;
  const double g3_sign = params.equation_variant == EquationVariant::PaperLiteral ? 1.0 : -1.0;

  // 1-based accessors keep the transcription readable.
  auto r = [&rho](int i, int j) { return rho(i - 1, j - 1); };

  Matrix4c d = Matrix4c::Zero();
  d(0, 0) = 2.0 * g2 * r(2, 2) + 1i * o1 * (r(2, 1) - r(1, 2));
  d(2, 2) = g3_sign * 2.0 * g3 * r(3, 3) - s * (r(3, 4) + r(4, 3));
  d(3, 3) = -2.0 * g4 * r(4, 4) - s * (r(3, 4) + r(4, 3)) + 1i * op * (r(2, 4) - r(4, 2));
  d(1, 1) = -(d(0, 0) + d(2, 2) + d(3, 3));

  d(0, 1) = -g2 * r(1, 2) + 1i * o1 * (r(2, 2) - r(1, 1)) - 1i * op * r(1, 4);
  d(0, 2) = -g3 * r(1, 3) + 1i * o1 * r(2, 3) - s * r(1, 4);
  d(0, 3) = -(g4 - 1i * dp) * r(1, 4) - s * r(1, 3) + 1i * o1 * r(2, 4) - 1i * op * r(1, 2);
  d(1, 2) = -(g2 + g3) * r(2, 3) + 1i * o1 * r(1, 3) + 1i * op * r(4, 3) - s * r(2, 4);
  d(1, 3) = -(g2 + g4 - 1i * dp) * r(2, 4) + 1i * op * (r(4, 4) - r(2, 2)) + 1i * o1 * r(1, 4) -
            s * r(2, 3);
  d(2, 3) = -(g3 + g4 - 1i * dp) * r(3, 4) - 1i * op * r(3, 2) - s * (r(3, 3) + r(4, 4));

  for (int i = 0; i < kLevels; ++i) {
    d(i, i) = d(i, i).real();
    for (int j = 0; j < i; ++j) d(i, j) = std::conj(d(j, i));
  }
  return DensityMatrix(d);
}

}  // namespace sgc
