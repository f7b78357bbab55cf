// Dense complex linear algebra for small spin-1/2 registers.
//
// Basis convention: |s1 s2 ... sN> with spin 1 as the most significant bit
// and |up> == |0>, so sigma_z|up> = +|up>. A register of N spins lives in a
// 2^N dimensional space; everything here is dense and capped at kMaxSpins.
#pragma once

#include <complex>
#include <string_view>

#include <Eigen/Dense>

namespace trispin {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

inline constexpr int kMaxSpins = 12;

enum class Pauli { I, X, Y, Z };

/// 2^n_spins; throws std::invalid_argument outside [1, kMaxSpins].
Eigen::Index hilbert_dim(int n_spins);

/// Bit position of `site` (1-based) inside a basis index.
inline int site_bit(int site, int n_spins) { return n_spins - site; }

/// +1 if `site` is up in basis state `index`, -1 if down.
inline int z_sign(Eigen::Index index, int site, int n_spins) {
  return ((index >> site_bit(site, n_spins)) & 1) ? -1 : 1;
}

ComplexMatrix pauli_matrix(Pauli which);

/// I (x) ... (x) sigma (x) ... (x) I with sigma at `site` (1-based).
ComplexMatrix pauli_on_site(Pauli which, int site, int n_spins);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs(const ComplexMatrix& a);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// max|A - A^dagger| <= tol * max(1, max|A|).
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// True when every off-diagonal entry is exactly zero.
bool is_diagonal(const ComplexMatrix& a);

struct Eigensystem {
  RealVector values;      // ascending
  ComplexMatrix vectors;  // orthonormal columns, vectors.col(k) <-> values(k)
};

/// Diagonal inputs take an exact path (stable sort, basis vectors); the rest
/// go through a Householder tridiagonalisation + implicit QR solver.
Eigensystem hermitian_eigensystem(const ComplexMatrix& a);

/// exp(-i A t) for Hermitian A, via the eigendecomposition.
ComplexMatrix unitary_exp(const ComplexMatrix& a, double t);

/// Basis state from a spin string of 'u'/'d' characters, spin 1 first.
StateVector basis_state(std::string_view spins);

/// A density matrix: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  struct Unchecked {};

  /// Validates the invariants with `tol` on trace and eigenvalues.
  explicit DensityMatrix(ComplexMatrix m, double tol = 1e-10);
  DensityMatrix(ComplexMatrix m, Unchecked) : m_(std::move(m)) {}

  static DensityMatrix pure(const StateVector& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return m_; }
  Eigen::Index dim() const { return m_.rows(); }
  double trace() const { return m_.trace().real(); }
  double purity() const;

  /// U rho U^dagger.
  DensityMatrix evolved(const ComplexMatrix& u) const;

 private:
  ComplexMatrix m_;
};

}  // namespace trispin
