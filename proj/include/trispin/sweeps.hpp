// Parameter sweeps. Every point is an independent pure computation, so the
// kernels below farm points out over OpenMP threads and write results by
// index. The reference:: versions run the same per-point code serially and
// are kept for testing; both produce bit-identical output.
#pragma once

#include <vector>

#include "trispin/adiabatic.hpp"
#include "trispin/ground_state.hpp"

namespace trispin {

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int samples = 2;

  /// Evenly spaced, endpoints exact. Throws for samples < 2 or hi < lo.
  double at(int i) const;
};

void validate(const Range& r);

struct ScanPoint {
  double j2 = 0.0;
  double j3 = 0.0;
  double energy = 0.0;
  double gap = 0.0;
  double sector_gap = 0.0;  // translation-invariant sector; NaN for open chains
  int degeneracy = 0;
  Phase phase = Phase::Unclassified;
};

/// Ground-state data at one parameter point; phase only for N = 3.
ScanPoint evaluate_point(const HamiltonianParams& p, const ClassifierThresholds& th = {});

struct KnobScan {
  Knob knob = Knob::J2;
  std::vector<ScanPoint> points;
  std::size_t min_gap_index = 0;

  double knob_at(std::size_t i) const;
};

KnobScan critical_point_scan(const HamiltonianParams& base, Knob knob, const Range& range,
                             const ClassifierThresholds& th = {});

/// Row-major over (j2, j3): index = i2 * j3.samples + i3.
std::vector<ScanPoint> phase_grid(const HamiltonianParams& base, const Range& j2,
                                  const Range& j3, const ClassifierThresholds& th = {});

std::vector<MSweepRow> min_fidelity_vs_steps(const HamiltonianParams& p0, const Schedule& templ,
                                             const DecoherenceParams& d,
                                             const std::vector<int>& steps_list,
                                             Evolution noisy_evolution);

namespace reference {

KnobScan critical_point_scan(const HamiltonianParams& base, Knob knob, const Range& range,
                             const ClassifierThresholds& th = {});
std::vector<ScanPoint> phase_grid(const HamiltonianParams& base, const Range& j2,
                                  const Range& j3, const ClassifierThresholds& th = {});
std::vector<MSweepRow> min_fidelity_vs_steps(const HamiltonianParams& p0, const Schedule& templ,
                                             const DecoherenceParams& d,
                                             const std::vector<int>& steps_list,
                                             Evolution noisy_evolution);

}  // namespace reference

}  // namespace trispin
