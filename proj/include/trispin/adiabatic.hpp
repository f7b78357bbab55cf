// Discretised adiabatic passage: the control coupling is held piecewise
// constant over M segments of duration tau = T / M, segment m using
// H[C(m T / M)]. Segments are propagated either exactly or by symmetric
// Trotter steps, optionally followed by a per-qubit relaxation channel.
#pragma once

#include <limits>
#include <optional>
#include <string_view>
#include <vector>

#include "trispin/hamiltonian.hpp"
#include "trispin/observables.hpp"

namespace trispin {

enum class ScheduleShape { HyperbolicSine, Linear };

std::string_view to_string(ScheduleShape shape);

struct Schedule {
  Knob control = Knob::J2;
  double c_start = 0.0;
  double c_end = 0.0;
  double total_time = 1.0;  // model time units
  int steps = 8;
  ScheduleShape shape = ScheduleShape::HyperbolicSine;
  /// Sharpness a of the sinh profile.
  double sinh_sharpness = 3.0;
  /// Fraction of the passage, in [0, 1], where the sinh profile is flattest.
  /// 0 gives C(t) = c0 + (c1 - c0) sinh(a t / T) / sinh(a).
  double sinh_center = 0.0;
  /// Trotter sub-steps per segment (TrotterSequence only).
  int substeps = 1;
};

void validate(const Schedule& s);

/// C(m T / M); exactly c_start at m = 0 and c_end at m = M.
double control_value(const Schedule& s, int m);

inline double segment_duration(const Schedule& s) { return s.total_time / s.steps; }

/// exp(-i Hx tau/2) exp(-i Hz tau) exp(-i Hx tau/2).
ComplexMatrix trotter_step_unitary(const HamiltonianParams& p, double tau);

enum class DecoherenceGranularity { PerSegment, PerSubstep };

struct DecoherenceParams {
  double t2_eff = std::numeric_limits<double>::infinity();  // seconds
  double t1 = std::numeric_limits<double>::infinity();      // seconds
  double step_duration = 0.0;  // physical seconds per segment
  DecoherenceGranularity granularity = DecoherenceGranularity::PerSegment;
};

/// Positive times (infinite allowed), t2_eff <= 2 t1, step_duration >= 0.
void validate(const DecoherenceParams& d);

/// Independent per-qubit relaxation over `duration` seconds: amplitude damping
/// towards |up> with gamma = 1 - exp(-t/T1), plus pure dephasing so that every
/// single-qubit coherence decays by exactly exp(-t/T2).
DensityMatrix apply_decoherence(const DensityMatrix& rho, const DecoherenceParams& d,
                                double duration);
inline DensityMatrix apply_decoherence(const DensityMatrix& rho, const DecoherenceParams& d) {
  return apply_decoherence(rho, d, d.step_duration);
}

enum class Evolution { TrotterSequence, ExactSegmentwise };

std::string_view to_string(Evolution e);

struct ScanRecord {
  int m = 0;
  double time = 0.0;     // model time m * tau
  double control = 0.0;
  DensityMatrix state;
  StateVector ground;    // first vector of the instantaneous ground space
  double fidelity = 0.0; // population of the instantaneous ground space
  double purity = 1.0;
  double energy = 0.0;   // tr(rho H(m))
  double c_xx = 0.0;     // NaN unless N = 3
  double witness_w = 0.0;
  double witness_ghz = 0.0;
};

struct ScanTrace {
  std::vector<ScanRecord> records;  // m = 0 .. M
  /// Witnesses fixed before the passage from the ideal endpoint ground state.
  std::optional<WitnessPair> witnesses;

  double min_fidelity() const;
  const ScanRecord& final_record() const { return records.back(); }
};

/// Starts in the (nondegenerate) ground state of H(c_start) and applies M
/// segments. Throws for a degenerate initial ground space, and for
/// PerSubstep decoherence combined with ExactSegmentwise evolution.
ScanTrace run_adiabatic_scan(const HamiltonianParams& p0, const Schedule& s,
                             const std::optional<DecoherenceParams>& d, Evolution evolution);

struct MSweepRow {
  int steps = 0;
  double ideal_min_fidelity = 0.0;
  double noisy_min_fidelity = 0.0;
};

/// One row for a given M: ideal = exact segments without relaxation;
/// noisy = `noisy_evolution` with `d`. Shared by the serial and parallel sweeps.
MSweepRow min_fidelity_row(const HamiltonianParams& p0, const Schedule& templ,
                           const DecoherenceParams& d, int steps, Evolution noisy_evolution);

}  // namespace trispin
