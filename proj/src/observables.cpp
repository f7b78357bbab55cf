#include "trispin/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace trispin {

namespace {

void require_dim(const DensityMatrix& rho, Eigen::Index dim, const char* what) {
  if (rho.dim() != dim) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch");
  }
}

constexpr std::array<LocalFrame, 3> kFrames = {LocalFrame::Computational, LocalFrame::GlobalFlip,
                                               LocalFrame::Hadamard};

}  // namespace

ComplexMatrix WitnessOperator::matrix() const {
  const Eigen::Index dim = reference.size();
  return offset * ComplexMatrix::Identity(dim, dim) - reference * reference.adjoint();
}

std::string_view to_string(LocalFrame frame) {
  switch (frame) {
    case LocalFrame::Computational: return "computational";
    case LocalFrame::GlobalFlip: return "global-flip";
    case LocalFrame::Hadamard: return "hadamard";
  }
  return "?";
}

StateVector in_frame(const StateVector& psi, LocalFrame frame) {
  const Eigen::Index dim = psi.size();
  const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(dim))));
  switch (frame) {
    case LocalFrame::Computational:
      return psi;
    case LocalFrame::GlobalFlip: {
      StateVector out(dim);
      for (Eigen::Index b = 0; b < dim; ++b) out(b ^ (dim - 1)) = psi(b);
      return out;
    }
    case LocalFrame::Hadamard: {
      // Fast Walsh-Hadamard transform, normalised.
      StateVector out = psi;
      for (Eigen::Index half = 1; half < dim; half <<= 1) {
        for (Eigen::Index b = 0; b < dim; ++b) {
          if (b & half) continue;
          const cplx u = out(b);
          const cplx v = out(b | half);
          out(b) = u + v;
          out(b | half) = u - v;
        }
      }
      return out / std::pow(std::sqrt(2.0), n);
    }
  }
  return psi;
}

StateVector w_state() {
  return (basis_state("duu") + basis_state("udu") + basis_state("uud")) / std::sqrt(3.0);
}

StateVector ghz_state(int sign) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("ghz_state: sign must be +1 or -1");
  return (basis_state("uuu") + static_cast<double>(sign) * basis_state("ddd")) / std::sqrt(2.0);
}

WitnessOperator w_witness(LocalFrame frame) { return {2.0 / 3.0, in_frame(w_state(), frame)}; }

WitnessOperator ghz_witness(LocalFrame frame) {
  return {0.75, in_frame(ghz_state(-1), frame)};
}

WitnessPair witnesses_for_target(const StateVector& target) {
  if (target.size() != 8) throw std::invalid_argument("witness selection needs a 3-qubit target");
  WitnessPair out{w_witness(), ghz_witness()};
  double best_w = -1.0;
  double best_ghz = -1.0;
  for (LocalFrame frame : kFrames) {
    const WitnessOperator w = w_witness(frame);
    const WitnessOperator g = ghz_witness(frame);
    const double ow = std::norm(w.reference.dot(target));
    const double og = std::norm(g.reference.dot(target));
    if (ow > best_w + 1e-12) {
      best_w = ow;
      out.w = w;
      out.w_frame = frame;
    }
    if (og > best_ghz + 1e-12) {
      best_ghz = og;
      out.ghz = g;
      out.ghz_frame = frame;
    }
  }
  return out;
}

CorrelationReport correlation_xx(const DensityMatrix& rho) {
  require_dim(rho, 8, "correlation_xx");
  const ComplexMatrix& m = rho.matrix();
  // <X_a X_b> = sum_k rho(k ^ mask, k) with mask flipping both spins.
  auto pair = [&](int a, int b) {
    const Eigen::Index mask = (Eigen::Index{1} << site_bit(a, 3)) |
                              (Eigen::Index{1} << site_bit(b, 3));
    cplx acc = 0.0;
    for (Eigen::Index k = 0; k < 8; ++k) acc += m(k ^ mask, k);
    return acc.real();
  };
  CorrelationReport r;
  r.pairwise = {pair(1, 2), pair(1, 3), pair(2, 3)};
  const double sum = r.pairwise[0] + r.pairwise[1] + r.pairwise[2];
  r.c_xx = sum / 3.0;
  r.c_xx_ordered = 2.0 * sum / 3.0;
  return r;
}

double witness_expectation(const DensityMatrix& rho, const WitnessOperator& w) {
  require_dim(rho, w.reference.size(), "witness_expectation");
  const cplx overlap = w.reference.dot(rho.matrix() * w.reference);
  return w.offset - overlap.real();
}

ComplexMatrix reference_to_basis_zero(const StateVector& ref) {
  const Eigen::Index dim = ref.size();
  const double mag = std::abs(ref(0));
  const cplx phase = mag > 0.0 ? ref(0) / mag : cplx(1.0, 0.0);
  StateVector v = ref;
  v(0) -= phase;
  const double vv = v.squaredNorm();
  if (vv < 1e-30) return ComplexMatrix::Identity(dim, dim);
  return ComplexMatrix::Identity(dim, dim) - (2.0 / vv) * v * v.adjoint();
}

double measure_witness_projectively(const DensityMatrix& rho, const WitnessOperator& w) {
  require_dim(rho, w.reference.size(), "measure_witness_projectively");
  const ComplexMatrix u = reference_to_basis_zero(w.reference);
  const ComplexMatrix rotated = u * rho.matrix() * u.adjoint();
  // Gradient dephasing leaves only the populations.
  const RealVector populations = rotated.diagonal().real();
  return w.offset - populations(0);
}

double fidelity(const DensityMatrix& rho, const StateVector& psi) {
  require_dim(rho, psi.size(), "fidelity");
  return std::abs(psi.dot(rho.matrix() * psi));
}

double experimental_fidelity(const DensityMatrix& rho, const StateVector& psi) {
  const double purity = rho.purity();
  if (!(purity > 0.0)) throw std::invalid_argument("experimental_fidelity: zero purity");
  return fidelity(rho, psi) / purity;
}

double signal_magnitude(const DensityMatrix& rho) {
  const double d = static_cast<double>(rho.dim());
  return std::sqrt(std::max(0.0, (d * rho.purity() - 1.0) / (d - 1.0)));
}

double RescaleResult::envelope(double step) const { return std::exp(-decay_rate * step); }

RescaleResult rescale_decay(const std::vector<SeriesPoint>& values,
                            const std::vector<SeriesPoint>& norms) {
  if (values.size() != norms.size()) {
    throw std::invalid_argument("rescale_decay: series lengths differ");
  }
  for (const auto& n : norms) {
    if (!(n.value > 0.0)) throw std::invalid_argument("rescale_decay: norms must be positive");
  }
  RescaleResult r;
  r.series = values;
  const std::size_t count = norms.size();
  if (count < 2) {
    r.warning = "fewer than two points; identity rescaling";
    return r;
  }
  double mean_x = 0.0, mean_y = 0.0;
  for (const auto& n : norms) {
    mean_x += n.step;
    mean_y += std::log(n.value);
  }
  mean_x /= static_cast<double>(count);
  mean_y /= static_cast<double>(count);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& n : norms) {
    sxx += (n.step - mean_x) * (n.step - mean_x);
    sxy += (n.step - mean_x) * (std::log(n.value) - mean_y);
  }
  if (!(sxx > 0.0)) {
    r.warning = "all steps coincide; identity rescaling";
    return r;
  }
  const double rate = -sxy / sxx;
  if (!std::isfinite(rate) || rate < 0.0) {
    r.warning = "envelope does not decay; identity rescaling";
    return r;
  }
  r.decay_rate = rate;
  r.fitted = true;
  for (auto& p : r.series) p.value /= r.envelope(p.step);
  return r;
}

std::vector<double> rescale_witness(const std::vector<double>& witness_values,
                                    const std::vector<double>& steps, const RescaleResult& fit,
                                    double offset, Eigen::Index dim) {
  if (witness_values.size() != steps.size()) {
    throw std::invalid_argument("rescale_witness: series lengths differ");
  }
  const double floor = 1.0 / static_cast<double>(dim);
  std::vector<double> out(witness_values.size());
  for (std::size_t i = 0; i < witness_values.size(); ++i) {
    const double population = offset - witness_values[i];
    out[i] = offset - (floor + (population - floor) / fit.envelope(steps[i]));
  }
  return out;
}

}  // namespace trispin
