// Ising chain with longitudinal and transverse fields plus nearest-neighbour
// two-body and three-body zz couplings:
//
//   H = wz sum_i Z_i + wx sum_i X_i + J2 sum_i Z_i Z_{i+1} + J3 sum_i Z_i Z_{i+1} Z_{i+2}
//
// With periodic boundaries the sums wrap (site N+1 == site 1). The sums are
// kept literal, so a periodic 3-ring carries three identical Z1 Z2 Z3 terms.
#pragma once

#include <array>
#include <string_view>
#include <vector>

#include "trispin/spin_algebra.hpp"

namespace trispin {

struct HamiltonianParams {
  double omega_z = 0.0;
  double omega_x = 0.0;
  double j2 = 0.0;
  double j3 = 0.0;
  int n_spins = 3;
  bool periodic = true;

  bool operator==(const HamiltonianParams&) const = default;
};

/// The coupling that an adiabatic scan or a critical-point scan varies.
enum class Knob { J2, J3 };

std::string_view to_string(Knob knob);
Knob knob_from_string(std::string_view name);

double knob_value(const HamiltonianParams& p, Knob knob);
HamiltonianParams with_knob(HamiltonianParams p, Knob knob, double value);

/// Throws std::invalid_argument for n_spins outside [1, kMaxSpins], a J2 term
/// on fewer than two spins, or a J3 term on fewer than three.
void validate(const HamiltonianParams& p);

/// Bonds (a, b) of the two-body sum, 1-based, in summation order.
std::vector<std::array<int, 2>> pair_bonds(int n_spins, bool periodic);
/// Triples (a, b, c) of the three-body sum, 1-based, in summation order.
std::vector<std::array<int, 3>> triple_bonds(int n_spins, bool periodic);

ComplexMatrix build_hamiltonian(const HamiltonianParams& p);

struct SplitHamiltonian {
  ComplexMatrix hx;  // wx sum X_i
  ComplexMatrix hz;  // everything else; diagonal in the computational basis
};

SplitHamiltonian split_xz(const HamiltonianParams& p);

/// Diagonal of hz, one entry per basis state.
RealVector diagonal_energies(const HamiltonianParams& p);

/// Cyclic translation |s1 s2 ... sN> -> |sN s1 ... s_{N-1}>.
ComplexMatrix cyclic_shift(int n_spins);

/// Orthonormal basis (columns) of the translation-invariant sector: one
/// normalised orbit sum per orbit of the cyclic shift.
ComplexMatrix symmetric_sector_basis(int n_spins);

}  // namespace trispin
