#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "sgc/equations.hpp"
#include "sgc/generator.hpp"
#include "sgc/params.hpp"
#include "test_support.hpp"

namespace sgc {
namespace {

using testing::no_fields;
using testing::random_hermitian;
using testing::reference_params;

TEST(EffectiveRabi, Examples) {
  EXPECT_EQ(effective_rabi(3.7, 0.0), 3.7);
  EXPECT_EQ(effective_rabi(3.7, 1.0), 0.0);
  EXPECT_EQ(effective_rabi(3.7, -1.0), 0.0);
  EXPECT_NEAR(effective_rabi(10.0, 0.6), 8.0, 1e-14);
}

TEST(EffectiveRabi, RejectsAlignmentOutsideUnitInterval) {
  try {
    effective_rabi(1.0, 1.0000001);
    FAIL() << "expected domain error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Domain);
  }
  EXPECT_THROW(effective_rabi(1.0, std::nan("")), Error);
}

TEST(SystemParams, Validation) {
  SystemParams p;
  EXPECT_NO_THROW(validate(p));
  p.gamma3 = 0.0;
  EXPECT_THROW(validate(p), Error);
  p = SystemParams{};
  p.p_align = -1.5;
  EXPECT_THROW(validate(p), Error);
  p = SystemParams{};
  p.mu23 = -1.0;
  EXPECT_THROW(validate(p), Error);
}

TEST(EomRhs, GroundStateStationaryWithoutFields) {
  const DensityMatrix d = eom_rhs(no_fields(), DensityMatrix::ground_state());
  EXPECT_EQ(d.max_abs(), 0.0);
}

TEST(EomRhs, TraceHermiticityAndLinearity) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  for (double p : {0.0, 0.3, -0.8, 0.99}) {
    const SystemParams params = reference_params(p, 2.5);
    for (int n = 0; n < 200; ++n) {
      const DensityMatrix a = random_hermitian(rng, false);
      const DensityMatrix b = random_hermitian(rng, false);
      const DensityMatrix da = eom_rhs(params, a);
      EXPECT_LT(std::abs(da.trace()), 1e-12);
      EXPECT_LT(da.hermiticity_error(), 1e-12);

      const double alpha = coef(rng);
      const double beta = coef(rng);
      const DensityMatrix lhs = eom_rhs(params, alpha * a + beta * b);
      const DensityMatrix rhs = alpha * da + beta * eom_rhs(params, b);
      EXPECT_LT(lhs.max_abs_difference(rhs), 1e-12);
    }
  }
}

TEST(EomRhs, PaperLiteralDiffersOnlyInLevelThreeSign) {
  std::mt19937_64 rng(11);
  SystemParams corrected = reference_params(0.5, 1.0);
  SystemParams literal = corrected;
  literal.equation_variant = EquationVariant::PaperLiteral;
  for (int n = 0; n < 50; ++n) {
    const DensityMatrix rho = random_hermitian(rng);
    const DensityMatrix diff = eom_rhs(literal, rho) - eom_rhs(corrected, rho);
    const double expected = 4.0 * corrected.gamma3 * rho(2, 2).real();
    EXPECT_NEAR(diff(2, 2).real(), expected, 1e-12);
    EXPECT_NEAR(diff(1, 1).real(), -expected, 1e-12);
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        if (i == j && (i == 1 || i == 2)) continue;
        EXPECT_EQ(std::abs(diff(i, j)), 0.0) << i << "," << j;
      }
    }
  }
}

TEST(BuildGenerator, CrossDampingEntriesVanishWithoutAlignment) {
  const auto slot = [](int i, int j) { return coherence_slot(i - 1, j - 1); };
  struct Entry {
    int row;
    int col;
  };
  // Couplings that exist only through p*sqrt(gamma3*gamma4).
  const Entry sgc_entries[] = {
      {2, slot(3, 4)},          {3, slot(3, 4)},          {slot(3, 4), 2},
      {slot(3, 4), 3},          {slot(1, 3), slot(1, 4)}, {slot(1, 4), slot(1, 3)},
      {slot(2, 3), slot(2, 4)}, {slot(2, 4), slot(2, 3)},
  };
  const GeneratorMatrix off = build_generator(reference_params(0.0, 3.0));
  const GeneratorMatrix on = build_generator(reference_params(0.5, 3.0));
  for (const auto& e : sgc_entries) {
    EXPECT_EQ(off.entries(e.row, e.col), 0.0) << e.row << "," << e.col;
    EXPECT_NE(on.entries(e.row, e.col), 0.0) << e.row << "," << e.col;
  }
}

TEST(BuildGenerator, GroundStateInKernelWithoutFields) {
  const GeneratorMatrix gen = build_generator(no_fields());
  EXPECT_EQ(gen.apply(vectorize(DensityMatrix::ground_state())).cwiseAbs().maxCoeff(), 0.0);
}

TEST(BuildGenerator, PopulationRowsSumToZero) {
  for (auto variant : {EquationVariant::Corrected, EquationVariant::PaperLiteral}) {
    SystemParams params = reference_params(0.7, -4.0);
    params.equation_variant = variant;
    const GeneratorMatrix gen = build_generator(params);
    EXPECT_LT(gen.entries.topRows<4>().colwise().sum().cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_TRUE(gen.entries.allFinite());
  }
}

TEST(BuildGenerator, MatchesScalarEquations) {
  std::mt19937_64 rng(2024);
  for (auto variant : {EquationVariant::Corrected, EquationVariant::PaperLiteral}) {
    SystemParams params = reference_params(0.5, 0.0);
    params.equation_variant = variant;
    for (double dp : {0.0, 5.0, -13.0}) {
      params.delta_p = dp;
      const GeneratorMatrix gen = build_generator(params);
      for (int n = 0; n < 100; ++n) {
        const DensityMatrix rho = random_hermitian(rng);
        const DensityMatrix via_matrix = unvectorize(gen.apply(vectorize(rho)));
        EXPECT_LT(via_matrix.max_abs_difference(eom_rhs(params, rho)), 1e-12);
      }
    }
  }
}

TEST(BuildGenerator, AlignmentReflectionSymmetry) {
  // Coherences involving level 3 change sign under p -> -p.
  RealVector16 flip = RealVector16::Ones();
  for (auto [i, j] : {std::pair{0, 2}, std::pair{1, 2}, std::pair{2, 3}}) {
    flip[coherence_slot(i, j)] = -1.0;
    flip[coherence_slot(i, j) + 1] = -1.0;
  }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (double p : {0.2, 0.7, 0.95}) {
    const GeneratorMatrix plus = build_generator(reference_params(p, 1.5));
    const GeneratorMatrix minus = build_generator(reference_params(-p, 1.5));
    for (int n = 0; n < 50; ++n) {
      RealVector16 x;
      for (auto& v : x) v = u(rng);
      const RealVector16 lhs = minus.apply(flip.cwiseProduct(x));
      const RealVector16 rhs = flip.cwiseProduct(plus.apply(x));
      EXPECT_LT((lhs - rhs).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Vectorization, RoundTripPreservesHermitianMatrices) {
  std::mt19937_64 rng(3);
  for (int n = 0; n < 20; ++n) {
    const DensityMatrix rho = random_hermitian(rng);
    EXPECT_EQ(unvectorize(vectorize(rho)).max_abs_difference(rho), 0.0);
  }
}

}  // namespace
}  // namespace sgc
