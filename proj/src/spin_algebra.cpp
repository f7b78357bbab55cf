#include "trispin/spin_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace trispin {

Eigen::Index hilbert_dim(int n_spins) {
  if (n_spins < 1 || n_spins > kMaxSpins) {
    throw std::invalid_argument("n_spins must lie in [1, " + std::to_string(kMaxSpins) +
                                "], got " + std::to_string(n_spins));
  }
  return Eigen::Index{1} << n_spins;
}

ComplexMatrix pauli_matrix(Pauli which) {
  ComplexMatrix p = ComplexMatrix::Zero(2, 2);
  switch (which) {
    case Pauli::I:
      p(0, 0) = 1.0;
      p(1, 1) = 1.0;
      break;
    case Pauli::X:
      p(0, 1) = 1.0;
      p(1, 0) = 1.0;
      break;
    case Pauli::Y:
      p(0, 1) = cplx(0.0, -1.0);
      p(1, 0) = cplx(0.0, 1.0);
      break;
    case Pauli::Z:
      p(0, 0) = 1.0;
      p(1, 1) = -1.0;
      break;
  }
  return p;
}

ComplexMatrix pauli_on_site(Pauli which, int site, int n_spins) {
  const Eigen::Index dim = hilbert_dim(n_spins);
  if (site < 1 || site > n_spins) {
    throw std::invalid_argument("site " + std::to_string(site) + " outside 1.." +
                                std::to_string(n_spins));
  }
  const Eigen::Index mask = Eigen::Index{1} << site_bit(site, n_spins);
  ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
  // Each single-site Pauli is a signed permutation; fill column by column.
  for (Eigen::Index col = 0; col < dim; ++col) {
    const bool down = (col & mask) != 0;
    switch (which) {
      case Pauli::I:
        out(col, col) = 1.0;
        break;
      case Pauli::X:
        out(col ^ mask, col) = 1.0;
        break;
      case Pauli::Y:
        out(col ^ mask, col) = down ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
        break;
      case Pauli::Z:
        out(col, col) = down ? -1.0 : 1.0;
        break;
    }
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  return max_abs(a - b);
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols()) return false;
  return max_abs(a - a.adjoint()) <= tol * std::max(1.0, max_abs(a));
}

bool is_diagonal(const ComplexMatrix& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (i != j && a(i, j) != cplx(0.0, 0.0)) return false;
    }
  }
  return true;
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& a) {
  if (!is_hermitian(a)) {
    throw std::invalid_argument("hermitian_eigensystem: input is not Hermitian");
  }
  const Eigen::Index dim = a.rows();
  Eigensystem out;
  if (is_diagonal(a)) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
      return a(x, x).real() < a(y, y).real();
    });
    out.values.resize(dim);
    out.vectors = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Eigen::Index idx = order[static_cast<std::size_t>(k)];
      out.values(k) = a(idx, idx).real();
      out.vectors(idx, k) = 1.0;
    }
    return out;
  }
  // Symmetrise so round-off in the input cannot leak into the solver.
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigensystem: solver did not converge");
  }
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  return out;
}

ComplexMatrix unitary_exp(const ComplexMatrix& a, double t) {
  if (!is_hermitian(a)) {
    throw std::invalid_argument("unitary_exp: input is not Hermitian");
  }
  const Eigen::Index dim = a.rows();
  if (is_diagonal(a)) {
    ComplexMatrix out = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      out(k, k) = std::exp(cplx(0.0, -a(k, k).real() * t));
    }
    return out;
  }
  const Eigensystem es = hermitian_eigensystem(a);
  StateVector phases(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    phases(k) = std::exp(cplx(0.0, -es.values(k) * t));
  }
  return es.vectors * phases.asDiagonal() * es.vectors.adjoint();
}

StateVector basis_state(std::string_view spins) {
  const int n = static_cast<int>(spins.size());
  const Eigen::Index dim = hilbert_dim(n);
  Eigen::Index index = 0;
  for (int site = 1; site <= n; ++site) {
    const char c = spins[static_cast<std::size_t>(site - 1)];
    if (c == 'd') {
      index |= Eigen::Index{1} << site_bit(site, n);
    } else if (c != 'u') {
      throw std::invalid_argument("basis_state: expected 'u' or 'd', got '" + std::string(1, c) +
                                  "'");
    }
  }
  StateVector psi = StateVector::Zero(dim);
  psi(index) = 1.0;
  return psi;
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
  if (m_.rows() != m_.cols() || m_.rows() == 0) {
    throw std::invalid_argument("DensityMatrix: matrix must be square and non-empty");
  }
  if (!is_hermitian(m_, 1e-12)) {
    throw std::invalid_argument("DensityMatrix: matrix is not Hermitian");
  }
  if (std::abs(trace() - 1.0) > tol) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(trace()) + " != 1");
  }
  const ComplexMatrix h = 0.5 * (m_ + m_.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol) {
    throw std::invalid_argument("DensityMatrix: negative eigenvalue " +
                                std::to_string(solver.eigenvalues().minCoeff()));
  }
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) {
    throw std::invalid_argument("DensityMatrix::pure: state norm " + std::to_string(norm) +
                                " != 1");
  }
  return DensityMatrix(psi * psi.adjoint(), Unchecked{});
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  return DensityMatrix(ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim), Unchecked{});
}

double DensityMatrix::purity() const {
  // tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return m_.cwiseAbs2().sum();
}

DensityMatrix DensityMatrix::evolved(const ComplexMatrix& u) const {
  if (u.rows() != dim() || u.cols() != dim()) {
    throw std::invalid_argument("DensityMatrix::evolved: dimension mismatch");
  }
  return DensityMatrix(u * m_ * u.adjoint(), Unchecked{});
}

}  // namespace trispin
