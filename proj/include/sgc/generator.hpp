#pragma once

#include <complex>

#include "sgc/density_matrix.hpp"
#include "sgc/params.hpp"

namespace sgc {

/// Real 16x16 generator L with d/dt vectorize(rho) = L * vectorize(rho).
struct GeneratorMatrix {
  RealMatrix16 entries = RealMatrix16::Zero();

  RealVector16 apply(const RealVector16& x) const { return entries * x; }
};

namespace detail {

// Accumulates "d(rho_target)/dt += coeff * rho_source" into real rows.
// Lower-triangle sources are read as conjugates of their upper partners.
class TermAccumulator {
 public:
  explicit TermAccumulator(RealMatrix16& m) : m_(m) {}

  void add(int ti, int tj, complex coeff, int si, int sj) {
    // Source: rho_s = u + i*sigma*v, with (u, v) its real slots.
    int u = -1;
    int v = -1;
    double sigma = 1.0;
    if (si == sj) {
      u = si;
    } else if (si < sj) {
      u = coherence_slot(si, sj);
      v = u + 1;
    } else {
      u = coherence_slot(sj, si);
      v = u + 1;
      sigma = -1.0;
    }
    const double cr = coeff.real();
    const double ci = coeff.imag();
    // coeff * rho_s = (cr*u - ci*sigma*v) + i (ci*u + cr*sigma*v)
    if (ti == tj) {
      m_(ti, u) += cr;
      if (v >= 0) m_(ti, v) += -ci * sigma;
      return;
    }
    const int re_row = coherence_slot(ti, tj);
    const int im_row = re_row + 1;
    m_(re_row, u) += cr;
    m_(im_row, u) += ci;
    if (v >= 0) {
      m_(re_row, v) += -ci * sigma;
      m_(im_row, v) += cr * sigma;
    }
  }

 private:
  RealMatrix16& m_;
};

}  // namespace detail

/// Assembles L term by term from the equations of motion. This is a second,
/// independent transcription of the equations in eom_rhs(); the two are
/// cross-checked in the tests.
inline GeneratorMatrix build_generator(const SystemParams& params) {
  using namespace std::complex_literals;

  const double g2 = params.gamma2;
  const double g3 = params.gamma3;
  const double g4 = params.gamma4;
  const double o1 = coupling_rabi(params);
  const double op = probe_rabi(params);
  const double s = cross_damping(params);
  const double dp = params.delta_p;
  const double g3_sign = params.equation_variant == EquationVariant::PaperLiteral ? 1.0 : -1.0;

  GeneratorMatrix gen;
  detail::TermAccumulator acc(gen.entries);
  // 1-based level labels below.
  auto term = [&acc](int ti, int tj, complex c, int si, int sj) {
    acc.add(ti - 1, tj - 1, c, si - 1, sj - 1);
  };

  term(1, 1, 2.0 * g2, 2, 2);
  term(1, 1, 1i * o1, 2, 1);
  term(1, 1, -1i * o1, 1, 2);

  term(3, 3, g3_sign * 2.0 * g3, 3, 3);
  term(3, 3, -s, 3, 4);
  term(3, 3, -s, 4, 3);

  term(4, 4, -2.0 * g4, 4, 4);
  term(4, 4, -s, 3, 4);
  term(4, 4, -s, 4, 3);
  term(4, 4, 1i * op, 2, 4);
  term(4, 4, -1i * op, 4, 2);

  term(1, 2, -g2, 1, 2);
  term(1, 2, 1i * o1, 2, 2);
  term(1, 2, -1i * o1, 1, 1);
  term(1, 2, -1i * op, 1, 4);

  term(1, 3, -g3, 1, 3);
  term(1, 3, 1i * o1, 2, 3);
  term(1, 3, -s, 1, 4);

  term(1, 4, -(g4 - 1i * dp), 1, 4);
  term(1, 4, -s, 1, 3);
  term(1, 4, 1i * o1, 2, 4);
  term(1, 4, -1i * op, 1, 2);

  term(2, 3, -(g2 + g3), 2, 3);
  term(2, 3, 1i * o1, 1, 3);
  term(2, 3, 1i * op, 4, 3);
  term(2, 3, -s, 2, 4);

  term(2, 4, -(g2 + g4 - 1i * dp), 2, 4);
  term(2, 4, 1i * op, 4, 4);
  term(2, 4, -1i * op, 2, 2);
  term(2, 4, 1i * o1, 1, 4);
  term(2, 4, -s, 2, 3);

  term(3, 4, -(g3 + g4 - 1i * dp), 3, 4);
  term(3, 4, -1i * op, 3, 2);
  term(3, 4, -s, 3, 3);
  term(3, 4, -s, 4, 4);

  // rho22 row: trace completion.
  gen.entries.row(1) = -(gen.entries.row(0) + gen.entries.row(2) + gen.entries.row(3));
  return gen;
}

}  // namespace sgc
