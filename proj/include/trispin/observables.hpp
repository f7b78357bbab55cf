// Detection layer: xx correlations, projector-type entanglement witnesses,
// fidelity measures and relaxation-decay rescaling.
#pragma once

#include <array>
#include <string>
#include <vector>

#include "trispin/spin_algebra.hpp"

namespace trispin {

/// W = offset * 1 - |ref><ref|. A negative expectation certifies genuine
/// tripartite entanglement of the class the reference state belongs to.
struct WitnessOperator {
  double offset = 0.0;
  StateVector reference;

  ComplexMatrix matrix() const;
};

/// Local frames a reference state can be expressed in. All are products of
/// identical single-spin unitaries, so the witness bound is unchanged.
enum class LocalFrame { Computational, GlobalFlip, Hadamard };

std::string_view to_string(LocalFrame frame);
StateVector in_frame(const StateVector& psi, LocalFrame frame);

/// (|duu> + |udu> + |uud>)/sqrt(3).
StateVector w_state();
/// (|uuu> + sign |ddd>)/sqrt(2), sign = +1 or -1.
StateVector ghz_state(int sign);

/// 2/3 - |W><W| in the given frame.
WitnessOperator w_witness(LocalFrame frame = LocalFrame::Computational);
/// 3/4 - |GHZ-><GHZ-| in the given frame.
WitnessOperator ghz_witness(LocalFrame frame = LocalFrame::Computational);

struct WitnessPair {
  WitnessOperator w;
  WitnessOperator ghz;
  LocalFrame w_frame = LocalFrame::Computational;
  LocalFrame ghz_frame = LocalFrame::Computational;
};

/// Picks, per witness, the frame whose reference overlaps `target` most.
/// Ties keep the earlier frame in Computational, GlobalFlip, Hadamard order.
WitnessPair witnesses_for_target(const StateVector& target);

struct CorrelationReport {
  double c_xx = 0.0;           // mean over unordered pairs
  double c_xx_ordered = 0.0;   // (1/3) sum over ordered pairs i != j
  std::array<double, 3> pairwise{};  // <X1X2>, <X1X3>, <X2X3>
};

CorrelationReport correlation_xx(const DensityMatrix& rho);

double witness_expectation(const DensityMatrix& rho, const WitnessOperator& w);

/// Householder reflection U with U|ref> proportional to |0...0>.
ComplexMatrix reference_to_basis_zero(const StateVector& ref);

/// Rotates rho so the reference maps onto basis state 0, discards the
/// off-diagonal elements and reads the population of that basis state.
double measure_witness_projectively(const DensityMatrix& rho, const WitnessOperator& w);

double fidelity(const DensityMatrix& rho, const StateVector& psi);

/// |<psi|rho|psi>| / tr(rho^2).
double experimental_fidelity(const DensityMatrix& rho, const StateVector& psi);

/// Norm of the traceless part of rho, scaled to 1 for pure states and 0 for
/// the maximally mixed state: sqrt((d tr(rho^2) - 1) / (d - 1)).
double signal_magnitude(const DensityMatrix& rho);

struct SeriesPoint {
  double step = 0.0;
  double value = 0.0;
};

struct RescaleResult {
  std::vector<SeriesPoint> series;
  /// Envelope exp(-decay_rate * step) divided out of the values.
  double decay_rate = 0.0;
  bool fitted = false;
  std::string warning;

  double envelope(double step) const;
};

/// Least-squares fit of log(norm) = c - k * step, then value / exp(-k * step).
/// Falls back to the identity (fitted = false) when the fit is degenerate or
/// gives a growing envelope. Throws for length mismatch or non-positive norms.
RescaleResult rescale_decay(const std::vector<SeriesPoint>& values,
                            const std::vector<SeriesPoint>& norms);

/// Witness values rescaled through the population deviation from 1/dim:
/// p = offset - w; p' = 1/dim + (p - 1/dim) / envelope.
std::vector<double> rescale_witness(const std::vector<double>& witness_values,
                                    const std::vector<double>& steps, const RescaleResult& fit,
                                    double offset, Eigen::Index dim);

}  // namespace trispin
