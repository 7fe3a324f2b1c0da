#pragma once

#include <complex>
#include <random>

#include "sgc/density_matrix.hpp"
#include "sgc/params.hpp"

namespace sgc::testing {

/// Parameters used for the reference figures: gamma = 1e8, Omega1 = 10,
/// Omegap = 0.2, gamma_i = 0.8 (all in units of gamma).
inline SystemParams reference_params(double p_align, double delta_p = 0.0) {
  SystemParams params;
  params.p_align = p_align;
  params.delta_p = delta_p;
  return params;
}

inline SystemParams no_fields(double p_align = 0.0) {
  SystemParams params;
  params.omega1_bare = 0.0;
  params.omegap_bare = 0.0;
  params.p_align = p_align;
  return params;
}

/// Random Hermitian matrix with entries in [-1, 1]; normalized to unit
/// trace when `unit_trace` is set.
inline DensityMatrix random_hermitian(std::mt19937_64& rng, bool unit_trace = true) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix4c m;
  for (int i = 0; i < 4; ++i) {
    m(i, i) = std::abs(u(rng));
    for (int j = i + 1; j < 4; ++j) {
      m(i, j) = complex(u(rng), u(rng));
      m(j, i) = std::conj(m(i, j));
    }
  }
  if (unit_trace) m /= m.trace().real();
  return DensityMatrix(m);
}

}  // namespace sgc::testing
