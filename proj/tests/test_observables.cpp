#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "trispin/ground_state.hpp"
#include "trispin/observables.hpp"

using namespace trispin;

namespace {

constexpr std::array kFrames = {LocalFrame::Computational, LocalFrame::GlobalFlip,
                                LocalFrame::Hadamard};

oracle::Vec hadamard3(const oracle::Vec& v) {
  oracle::Mat h(2, 2);
  h << 1, 1, 1, -1;
  h /= std::sqrt(2.0);
  return oracle::chain({h, h, h}) * v;
}

}  // namespace

TEST(Observables, ReferenceStates) {
  const StateVector w = w_state();
  EXPECT_NEAR(w.norm(), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(w(4)), 1.0 / std::sqrt(3.0), 1e-15);  // |duu>
  const StateVector g = ghz_state(-1);
  EXPECT_NEAR(g(0).real(), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(g(7).real(), -1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(ghz_state(0), std::invalid_argument);
}

TEST(Observables, WitnessExemplarValues) {
  EXPECT_NEAR(witness_expectation(DensityMatrix::pure(w_state()), w_witness()), -1.0 / 3.0, 1e-9);
  EXPECT_NEAR(witness_expectation(DensityMatrix::pure(ghz_state(-1)), ghz_witness()), -0.25, 1e-9);
  // The GHZ witness sees nothing on the W state and vice versa stays positive.
  EXPECT_NEAR(witness_expectation(DensityMatrix::pure(w_state()), ghz_witness()), 0.75, 1e-12);
  EXPECT_GT(witness_expectation(DensityMatrix::pure(ghz_state(-1)), w_witness()), 0.0);
  EXPECT_NEAR(witness_expectation(DensityMatrix::maximally_mixed(8), ghz_witness()),
              0.75 - 1.0 / 8.0, 1e-12);
}

TEST(Observables, HadamardFrameMatchesOracle) {
  std::mt19937_64 rng(31);
  const StateVector v = oracle::random_state(rng, 8);
  EXPECT_LT(max_abs_diff(in_frame(v, LocalFrame::Hadamard), hadamard3(v)), 1e-14);
  const StateVector flipped = in_frame(basis_state("uud"), LocalFrame::GlobalFlip);
  EXPECT_LT(max_abs_diff(flipped, basis_state("ddu")), 1e-15);
  EXPECT_EQ(max_abs_diff(in_frame(v, LocalFrame::Computational), v), 0.0);
}

TEST(Observables, WitnessesNonNegativeOnProductStates) {
  std::mt19937_64 rng(37);
  double lowest = 1e9;
  for (int trial = 0; trial < 1000; ++trial) {
    const DensityMatrix rho = DensityMatrix::pure(oracle::random_product_state(rng, 3));
    for (LocalFrame f : kFrames) {
      lowest = std::min({lowest, witness_expectation(rho, w_witness(f)),
                         witness_expectation(rho, ghz_witness(f))});
    }
  }
  EXPECT_GE(lowest, -1e-9);
}

TEST(Observables, ProjectiveMeasurementMatchesExpectation) {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho(oracle::random_density(rng, 8));
    for (LocalFrame f : kFrames) {
      for (const auto& w : {w_witness(f), ghz_witness(f)}) {
        EXPECT_NEAR(measure_witness_projectively(rho, w), witness_expectation(rho, w), 1e-10);
      }
    }
  }
}

TEST(Observables, HouseholderMapsReferenceToBasisZero) {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 10; ++trial) {
    const StateVector ref = oracle::random_state(rng, 8);
    const ComplexMatrix u = reference_to_basis_zero(ref);
    EXPECT_LT(max_abs_diff(u.adjoint() * u, ComplexMatrix::Identity(8, 8)), 1e-13);
    const StateVector out = u * ref;
    EXPECT_NEAR(std::abs(out(0)), 1.0, 1e-13);
  }
  EXPECT_LT(max_abs_diff(reference_to_basis_zero(basis_state("uuu")) * basis_state("uuu"),
                         basis_state("uuu")),
            1e-15);
}

TEST(Observables, FrameSelectionFollowsTarget) {
  const WitnessPair plain = witnesses_for_target(ghz_state(-1));
  EXPECT_EQ(plain.ghz_frame, LocalFrame::Computational);
  const WitnessPair rotated = witnesses_for_target(in_frame(ghz_state(-1), LocalFrame::Hadamard));
  EXPECT_EQ(rotated.ghz_frame, LocalFrame::Hadamard);
  const WitnessPair flipped = witnesses_for_target(in_frame(w_state(), LocalFrame::GlobalFlip));
  EXPECT_EQ(flipped.w_frame, LocalFrame::GlobalFlip);
  // Witness on its own frame's reference keeps the analytic value.
  EXPECT_NEAR(witness_expectation(DensityMatrix::pure(in_frame(ghz_state(-1), LocalFrame::Hadamard)),
                                  rotated.ghz),
              -0.25, 1e-12);
}

TEST(Observables, CorrelationXX) {
  StateVector plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const StateVector ppp = kron(kron(plus, plus), plus);
  const CorrelationReport c = correlation_xx(DensityMatrix::pure(ppp));
  EXPECT_NEAR(c.c_xx, 1.0, 1e-14);
  EXPECT_NEAR(c.c_xx_ordered, 2.0, 1e-14);
  EXPECT_NEAR(correlation_xx(DensityMatrix::pure(basis_state("udu"))).c_xx, 0.0, 1e-15);
  EXPECT_NEAR(correlation_xx(DensityMatrix::pure(ghz_state(1))).c_xx, 0.0, 1e-15);
  // Against explicit X_i X_j operators on a random state.
  std::mt19937_64 rng(47);
  const oracle::Mat rho = oracle::random_density(rng, 8);
  const CorrelationReport r = correlation_xx(DensityMatrix(rho));
  const std::array<std::array<int, 2>, 3> pairs = {{{1, 2}, {1, 3}, {2, 3}}};
  for (std::size_t k = 0; k < 3; ++k) {
    const double expect =
        (rho * oracle::on_sites(oracle::X(), {pairs[k][0], pairs[k][1]}, 3)).trace().real();
    EXPECT_NEAR(r.pairwise[k], expect, 1e-14);
  }
  EXPECT_NEAR(r.c_xx, (r.pairwise[0] + r.pairwise[1] + r.pairwise[2]) / 3.0, 1e-15);
}

TEST(Observables, FidelityMeasures) {
  std::mt19937_64 rng(53);
  const StateVector psi = oracle::random_state(rng, 8);
  const DensityMatrix pure = DensityMatrix::pure(psi);
  EXPECT_NEAR(fidelity(pure, psi), 1.0, 1e-12);
  EXPECT_NEAR(experimental_fidelity(pure, psi), fidelity(pure, psi), 1e-10);
  const DensityMatrix mixed = DensityMatrix::maximally_mixed(8);
  EXPECT_NEAR(fidelity(mixed, psi), 1.0 / 8.0, 1e-14);
  EXPECT_NEAR(experimental_fidelity(mixed, psi), 1.0, 1e-12);
  EXPECT_NEAR(signal_magnitude(pure), 1.0, 1e-12);
  EXPECT_NEAR(signal_magnitude(mixed), 0.0, 1e-7);
}

TEST(Observables, RescaleRecoversExponentialEnvelope) {
  std::vector<SeriesPoint> values, norms;
  for (int m = 0; m <= 8; ++m) {
    const double env = std::exp(-0.1 * m);
    values.push_back({static_cast<double>(m), 0.5 * env});
    norms.push_back({static_cast<double>(m), env});
  }
  const RescaleResult r = rescale_decay(values, norms);
  EXPECT_TRUE(r.fitted);
  EXPECT_NEAR(r.decay_rate, 0.1, 1e-12);
  for (const auto& pt : r.series) EXPECT_NEAR(pt.value, 0.5, 1e-12);
  EXPECT_NEAR(r.envelope(0.0), 1.0, 1e-15);
}

TEST(Observables, RescaleNormalisesToFirstPoint) {
  // A constant prefactor on the norms must not change the rescaled values.
  std::vector<SeriesPoint> values, norms;
  for (int m = 0; m <= 4; ++m) {
    values.push_back({static_cast<double>(m), 1.0});
    norms.push_back({static_cast<double>(m), 0.3 * std::exp(-0.2 * m)});
  }
  const RescaleResult r = rescale_decay(values, norms);
  EXPECT_NEAR(r.series.front().value, 1.0, 1e-12);
  EXPECT_NEAR(r.series.back().value, std::exp(0.8), 1e-10);
}

TEST(Observables, RescaleFallbacksAndErrors) {
  const std::vector<SeriesPoint> one = {{0.0, 0.4}};
  const RescaleResult single = rescale_decay(one, one);
  EXPECT_FALSE(single.fitted);
  EXPECT_FALSE(single.warning.empty());
  EXPECT_EQ(single.series.front().value, 0.4);

  const std::vector<SeriesPoint> v = {{0.0, 1.0}, {1.0, 1.0}};
  const std::vector<SeriesPoint> growing = {{0.0, 0.5}, {1.0, 0.9}};
  const RescaleResult g = rescale_decay(v, growing);
  EXPECT_FALSE(g.fitted);
  EXPECT_EQ(g.series[1].value, 1.0);

  EXPECT_THROW(rescale_decay(v, one), std::invalid_argument);
  const std::vector<SeriesPoint> zero = {{0.0, 1.0}, {1.0, 0.0}};
  EXPECT_THROW(rescale_decay(v, zero), std::invalid_argument);
}

TEST(Observables, RescaleWitnessThroughPopulation) {
  RescaleResult fit;
  fit.fitted = true;
  fit.decay_rate = std::log(2.0);  // envelope 1/2 at step 1
  // p = 0.75 - 0.5 = 0.25; 1/8 + (0.25 - 1/8) * 2 = 0.375; w' = 0.375.
  const auto out = rescale_witness({0.5, 0.5}, {0.0, 1.0}, fit, 0.75, 8);
  EXPECT_NEAR(out[0], 0.5, 1e-15);
  EXPECT_NEAR(out[1], 0.375, 1e-14);
}
