// Exact ground states and the three-qubit entanglement class of a ground state.
#pragma once

#include <array>
#include <limits>
#include <string_view>
#include <vector>

#include "trispin/hamiltonian.hpp"

namespace trispin {

struct GroundStateReport {
  double energy = 0.0;
  int degeneracy = 0;
  std::vector<StateVector> ground_space;  // orthonormal
  /// Distance to the first level above the ground space; +inf when the whole
  /// spectrum is degenerate.
  double gap = std::numeric_limits<double>::infinity();
  RealVector spectrum;  // ascending
};

/// Ground space = all eigenvectors with lambda <= lambda_min + tol * max(1, width),
/// width being the spectral range.
GroundStateReport ground_state_report(const HamiltonianParams& p, double degeneracy_tol = 1e-8);

/// Lowest two levels of H restricted to the translation-invariant sector.
/// NaN for open chains.
double symmetric_sector_gap(const HamiltonianParams& p);

/// Product: every spin unentangled. Biseparable: some but not all spins split
/// off. WType / GHZType: the two genuinely tripartite classes. Degenerate:
/// ground space is not one-dimensional. Unclassified: N != 3.
enum class Phase { Product, Biseparable, WType, GHZType, Degenerate, Unclassified };

std::string_view to_string(Phase phase);

struct ClassifierThresholds {
  /// Single-spin von Neumann entropy (bits) below which a spin counts as
  /// unentangled from the rest.
  double product_entropy = 1e-3;
  /// Three-tangle at or above which a genuinely tripartite state is GHZ-type.
  double tangle = 0.1;
};

/// 4 |Cayley hyperdeterminant| of the 2x2x2 amplitude tensor. Requires dim 8.
double three_tangle(const StateVector& psi);

/// Von Neumann entropy in bits of the reduced state of `site` (1-based).
double single_site_entropy(const StateVector& psi, int site);

Phase classify_state(const StateVector& psi, const ClassifierThresholds& th = {});

/// Throws for n_spins != 3. Degenerate ground spaces give Phase::Degenerate.
Phase classify_phase(const GroundStateReport& report, const HamiltonianParams& p,
                     const ClassifierThresholds& th = {});

}  // namespace trispin
