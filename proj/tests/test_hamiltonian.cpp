#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "trispin/hamiltonian.hpp"

using namespace trispin;

TEST(Hamiltonian, MatchesKroneckerOracle) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int n : {3, 4, 5}) {
    for (bool periodic : {true, false}) {
      const HamiltonianParams p{u(rng), u(rng), u(rng), u(rng), n, periodic};
      const auto expect = oracle::hamiltonian(p.omega_z, p.omega_x, p.j2, p.j3, n, periodic);
      EXPECT_LT(max_abs_diff(build_hamiltonian(p), expect), 1e-13)
          << "n=" << n << " periodic=" << periodic;
    }
  }
}

TEST(Hamiltonian, PeriodicRingOfThreeCarriesThreeTripleTerms) {
  const HamiltonianParams p{0.0, 0.0, 0.0, 1.0, 3, true};
  const auto zzz = oracle::chain({oracle::Z(), oracle::Z(), oracle::Z()});
  EXPECT_EQ(max_abs_diff(build_hamiltonian(p), 3.0 * zzz), 0.0);
  EXPECT_EQ(triple_bonds(3, true).size(), 3u);
  EXPECT_EQ(triple_bonds(3, false).size(), 1u);
  EXPECT_EQ(pair_bonds(3, true).size(), 3u);
  EXPECT_EQ(pair_bonds(3, false).size(), 2u);
}

TEST(Hamiltonian, LinearInCoefficients) {
  const HamiltonianParams a{-2.0, 0.09, 0.7, 0.0, 3, true};
  const HamiltonianParams b{0.5, -0.3, 0.1, 1.2, 3, true};
  const HamiltonianParams sum{a.omega_z + 2 * b.omega_z, a.omega_x + 2 * b.omega_x,
                              a.j2 + 2 * b.j2, a.j3 + 2 * b.j3, 3, true};
  EXPECT_LT(max_abs_diff(build_hamiltonian(sum),
                         build_hamiltonian(a) + 2.0 * build_hamiltonian(b)),
            1e-13);
}

TEST(Hamiltonian, HermitianAndTranslationInvariantWhenPeriodic) {
  for (int n : {3, 4, 6}) {
    const HamiltonianParams p{-0.4, 0.3, 0.8, -0.6, n, true};
    const ComplexMatrix h = build_hamiltonian(p);
    EXPECT_TRUE(is_hermitian(h));
    const ComplexMatrix t = cyclic_shift(n);
    EXPECT_LT(max_abs_diff(t * h, h * t), 1e-13) << "n=" << n;
  }
  // An open chain with a bond term is not translation invariant.
  const HamiltonianParams open{0.0, 0.0, 1.0, 0.0, 3, false};
  const ComplexMatrix h = build_hamiltonian(open), t = cyclic_shift(3);
  EXPECT_GT(max_abs_diff(t * h, h * t), 0.5);
}

TEST(Hamiltonian, CyclicShiftMovesSpins) {
  // |s1 s2 s3> -> |s3 s1 s2>: |uud> becomes |duu>.
  const StateVector out = cyclic_shift(3) * basis_state("uud");
  EXPECT_EQ(max_abs_diff(out, basis_state("duu")), 0.0);
}

TEST(Hamiltonian, SplitSumsToFullAndZPartIsDiagonal) {
  const HamiltonianParams p{-2.0, 0.09, 1.3, 0.4, 3, true};
  const SplitHamiltonian s = split_xz(p);
  EXPECT_LT(max_abs_diff(s.hx + s.hz, build_hamiltonian(p)), 1e-15);
  EXPECT_TRUE(is_diagonal(s.hz));
  const RealVector d = diagonal_energies(p);
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_DOUBLE_EQ(d(i), s.hz(i, i).real());
}

TEST(Hamiltonian, SymmetricSectorBasis) {
  const ComplexMatrix b = symmetric_sector_basis(3);
  EXPECT_EQ(b.cols(), 4);  // orbits {uuu}, {one down}, {two down}, {ddd}
  EXPECT_LT(max_abs_diff(b.adjoint() * b, ComplexMatrix::Identity(4, 4)), 1e-14);
  EXPECT_LT(max_abs_diff(cyclic_shift(3) * b, b), 1e-14);
  EXPECT_EQ(symmetric_sector_basis(4).cols(), 6);
}

TEST(Hamiltonian, KnobHelpers) {
  HamiltonianParams p{-2.0, 0.09, 0.0, 0.0, 3, true};
  EXPECT_EQ(knob_value(with_knob(p, Knob::J2, 1.5), Knob::J2), 1.5);
  EXPECT_EQ(with_knob(p, Knob::J3, 0.5).j3, 0.5);
  EXPECT_EQ(knob_from_string("J3"), Knob::J3);
  EXPECT_EQ(to_string(Knob::J2), "j2");
  EXPECT_THROW(knob_from_string("J4"), std::invalid_argument);
}

TEST(Hamiltonian, ValidationErrors) {
  EXPECT_THROW(validate(HamiltonianParams{0, 0, 0, 0, 0, true}), std::invalid_argument);
  EXPECT_THROW(validate(HamiltonianParams{0, 0, 0, 0, kMaxSpins + 1, true}),
               std::invalid_argument);
  EXPECT_THROW(validate(HamiltonianParams{0, 0, 1.0, 0, 1, true}), std::invalid_argument);
  EXPECT_THROW(validate(HamiltonianParams{0, 0, 0, 1.0, 2, true}), std::invalid_argument);
  EXPECT_THROW(validate(HamiltonianParams{std::nan(""), 0, 0, 0, 3, true}),
               std::invalid_argument);
  EXPECT_NO_THROW(validate(HamiltonianParams{1.0, 1.0, 0, 0, 1, true}));
}
