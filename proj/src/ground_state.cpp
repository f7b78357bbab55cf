#include "trispin/ground_state.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace trispin {

GroundStateReport ground_state_report(const HamiltonianParams& p, double degeneracy_tol) {
  if (!(degeneracy_tol > 0.0)) {
    throw std::invalid_argument("degeneracy_tol must be positive");
  }
  const Eigensystem es = hermitian_eigensystem(build_hamiltonian(p));
  const Eigen::Index dim = es.values.size();
  const double width = es.values(dim - 1) - es.values(0);
  const double cutoff = es.values(0) + degeneracy_tol * std::max(1.0, width);

  GroundStateReport r;
  r.energy = es.values(0);
  r.spectrum = es.values;
  Eigen::Index k = 0;
  while (k < dim && es.values(k) <= cutoff) {
    r.ground_space.push_back(es.vectors.col(k));
    ++k;
  }
  r.degeneracy = static_cast<int>(k);
  if (k < dim) r.gap = es.values(k) - r.energy;
  return r;
}

double symmetric_sector_gap(const HamiltonianParams& p) {
  if (!p.periodic) return std::numeric_limits<double>::quiet_NaN();
  const ComplexMatrix basis = symmetric_sector_basis(p.n_spins);
  if (basis.cols() < 2) return std::numeric_limits<double>::infinity();
  const ComplexMatrix h = basis.adjoint() * build_hamiltonian(p) * basis;
  const RealVector values = hermitian_eigensystem(h).values;
  return values(1) - values(0);
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::Product: return "product";
    case Phase::Biseparable: return "biseparable";
    case Phase::WType: return "W";
    case Phase::GHZType: return "GHZ";
    case Phase::Degenerate: return "degenerate";
    case Phase::Unclassified: return "unclassified";
  }
  return "?";
}

double three_tangle(const StateVector& psi) {
  if (psi.size() != 8) throw std::invalid_argument("three_tangle needs a 3-qubit state");
  // a(i,j,k) with i the spin-1 bit.
  auto a = [&](int i, int j, int k) { return psi(4 * i + 2 * j + k); };
  const cplx d1 = a(0, 0, 0) * a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 1) +
                  a(0, 0, 1) * a(0, 0, 1) * a(1, 1, 0) * a(1, 1, 0) +
                  a(0, 1, 0) * a(0, 1, 0) * a(1, 0, 1) * a(1, 0, 1) +
                  a(1, 0, 0) * a(1, 0, 0) * a(0, 1, 1) * a(0, 1, 1);
  const cplx d2 = a(0, 0, 0) * a(1, 1, 1) * a(0, 1, 1) * a(1, 0, 0) +
                  a(0, 0, 0) * a(1, 1, 1) * a(1, 0, 1) * a(0, 1, 0) +
                  a(0, 0, 0) * a(1, 1, 1) * a(1, 1, 0) * a(0, 0, 1) +
                  a(0, 1, 1) * a(1, 0, 0) * a(1, 0, 1) * a(0, 1, 0) +
                  a(0, 1, 1) * a(1, 0, 0) * a(1, 1, 0) * a(0, 0, 1) +
                  a(1, 0, 1) * a(0, 1, 0) * a(1, 1, 0) * a(0, 0, 1);
  const cplx d3 = a(0, 0, 0) * a(1, 1, 0) * a(1, 0, 1) * a(0, 1, 1) +
                  a(1, 1, 1) * a(0, 0, 1) * a(0, 1, 0) * a(1, 0, 0);
  return 4.0 * std::abs(d1 - 2.0 * d2 + 4.0 * d3);
}

double single_site_entropy(const StateVector& psi, int site) {
  const Eigen::Index dim = psi.size();
  const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(dim))));
  if ((Eigen::Index{1} << n) != dim) throw std::invalid_argument("state dimension not 2^N");
  if (site < 1 || site > n) throw std::invalid_argument("site out of range");
  const Eigen::Index mask = Eigen::Index{1} << site_bit(site, n);
  // 2x2 reduced density matrix: rho_ab = sum over the rest of psi_a psi_b^*.
  cplx r00 = 0.0, r01 = 0.0, r11 = 0.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    if (b & mask) continue;
    const cplx up = psi(b);
    const cplx down = psi(b | mask);
    r00 += up * std::conj(up);
    r11 += down * std::conj(down);
    r01 += up * std::conj(down);
  }
  const double tr = r00.real() + r11.real();
  const double det = r00.real() * r11.real() - std::norm(r01);
  const double disc = std::sqrt(std::max(0.0, tr * tr / 4.0 - det));
  double entropy = 0.0;
  for (double lam : {tr / 2.0 + disc, tr / 2.0 - disc}) {
    if (lam > 1e-300) entropy -= lam * std::log2(lam);
  }
  return std::max(0.0, entropy);
}

Phase classify_state(const StateVector& psi, const ClassifierThresholds& th) {
  if (psi.size() != 8) return Phase::Unclassified;
  int split = 0;
  for (int site = 1; site <= 3; ++site) {
    if (single_site_entropy(psi, site) < th.product_entropy) ++split;
  }
  if (split == 3) return Phase::Product;
  if (split > 0) return Phase::Biseparable;
  return three_tangle(psi) >= th.tangle ? Phase::GHZType : Phase::WType;
}

Phase classify_phase(const GroundStateReport& report, const HamiltonianParams& p,
                     const ClassifierThresholds& th) {
  if (p.n_spins != 3) throw std::invalid_argument("classify_phase requires n_spins = 3");
  if (report.degeneracy != 1) return Phase::Degenerate;
  return classify_state(report.ground_space.front(), th);
}

}  // namespace trispin
