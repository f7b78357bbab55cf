#include "trispin/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace trispin {

std::string_view to_string(Knob knob) { return knob == Knob::J2 ? "j2" : "j3"; }

Knob knob_from_string(std::string_view name) {
  if (name == "j2" || name == "J2") return Knob::J2;
  if (name == "j3" || name == "J3") return Knob::J3;
  throw std::invalid_argument("unknown knob '" + std::string(name) + "' (expected j2 or j3)");
}

double knob_value(const HamiltonianParams& p, Knob knob) {
  return knob == Knob::J2 ? p.j2 : p.j3;
}

HamiltonianParams with_knob(HamiltonianParams p, Knob knob, double value) {
  (knob == Knob::J2 ? p.j2 : p.j3) = value;
  return p;
}

void validate(const HamiltonianParams& p) {
  hilbert_dim(p.n_spins);
  for (double v : {p.omega_z, p.omega_x, p.j2, p.j3}) {
    if (!std::isfinite(v)) throw std::invalid_argument("Hamiltonian coefficients must be finite");
  }
  if (p.n_spins < 2 && p.j2 != 0.0) {
    throw std::invalid_argument("two-body coupling needs at least 2 spins");
  }
  if (p.n_spins < 3 && p.j3 != 0.0) {
    throw std::invalid_argument("three-body coupling needs at least 3 spins");
  }
}

std::vector<std::array<int, 2>> pair_bonds(int n_spins, bool periodic) {
  std::vector<std::array<int, 2>> bonds;
  if (n_spins < 2) return bonds;
  const int count = periodic ? n_spins : n_spins - 1;
  for (int i = 1; i <= count; ++i) bonds.push_back({i, i % n_spins + 1});
  return bonds;
}

std::vector<std::array<int, 3>> triple_bonds(int n_spins, bool periodic) {
  std::vector<std::array<int, 3>> bonds;
  if (n_spins < 3) return bonds;
  const int count = periodic ? n_spins : n_spins - 2;
  for (int i = 1; i <= count; ++i) {
    bonds.push_back({i, i % n_spins + 1, (i + 1) % n_spins + 1});
  }
  return bonds;
}

RealVector diagonal_energies(const HamiltonianParams& p) {
  validate(p);
  const int n = p.n_spins;
  const Eigen::Index dim = hilbert_dim(n);
  const auto pairs = pair_bonds(n, p.periodic);
  const auto triples = triple_bonds(n, p.periodic);
  RealVector diag(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    double field = 0.0;
    for (int i = 1; i <= n; ++i) field += z_sign(b, i, n);
    double two = 0.0;
    for (const auto& [i, j] : pairs) two += z_sign(b, i, n) * z_sign(b, j, n);
    double three = 0.0;
    for (const auto& [i, j, k] : triples) {
      three += z_sign(b, i, n) * z_sign(b, j, n) * z_sign(b, k, n);
    }
    diag(b) = p.omega_z * field + p.j2 * two + p.j3 * three;
  }
  return diag;
}

SplitHamiltonian split_xz(const HamiltonianParams& p) {
  validate(p);
  const int n = p.n_spins;
  const Eigen::Index dim = hilbert_dim(n);
  SplitHamiltonian out{ComplexMatrix::Zero(dim, dim), ComplexMatrix::Zero(dim, dim)};
  out.hz.diagonal() = diagonal_energies(p).cast<cplx>();
  if (p.omega_x != 0.0) {
    for (Eigen::Index b = 0; b < dim; ++b) {
      for (int i = 1; i <= n; ++i) {
        out.hx(b ^ (Eigen::Index{1} << site_bit(i, n)), b) += p.omega_x;
      }
    }
  }
  return out;
}

ComplexMatrix build_hamiltonian(const HamiltonianParams& p) {
  SplitHamiltonian s = split_xz(p);
  return s.hx + s.hz;
}

ComplexMatrix cyclic_shift(int n_spins) {
  const Eigen::Index dim = hilbert_dim(n_spins);
  ComplexMatrix t = ComplexMatrix::Zero(dim, dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    // Spin i moves to site i+1: the last bit (spin N) becomes the top bit.
    const Eigen::Index low = b & 1;
    const Eigen::Index shifted = (b >> 1) | (low << (n_spins - 1));
    t(shifted, b) = 1.0;
  }
  return t;
}

ComplexMatrix symmetric_sector_basis(int n_spins) {
  const Eigen::Index dim = hilbert_dim(n_spins);
  std::vector<bool> seen(static_cast<std::size_t>(dim), false);
  std::vector<StateVector> columns;
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (seen[static_cast<std::size_t>(b)]) continue;
    StateVector orbit = StateVector::Zero(dim);
    Eigen::Index cur = b;
    do {
      seen[static_cast<std::size_t>(cur)] = true;
      orbit(cur) = 1.0;
      cur = (cur >> 1) | ((cur & 1) << (n_spins - 1));
    } while (cur != b);
    columns.push_back(orbit.normalized());
  }
  ComplexMatrix basis(dim, static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    basis.col(static_cast<Eigen::Index>(k)) = columns[k];
  }
  return basis;
}

}  // namespace trispin
