// Experiment configuration and drivers behind the command-line tool.
//
// Config files are flat `key = value` text with dotted section keys and `#`
// comments, e.g.
//
//   case = A
//   schedule.M = 16
//   decoherence.enabled = false
//
// Named cases A and B fix the Hamiltonian and the scanned coupling; changing
// those requires `case = custom`.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trispin/adiabatic.hpp"
#include "trispin/pulse_compiler.hpp"
#include "trispin/sweeps.hpp"

namespace trispin {

enum class CaseName { A, B, Custom };
std::string_view to_string(CaseName c);
CaseName case_from_string(std::string_view name);

struct ExperimentConfig {
  CaseName name = CaseName::A;
  HamiltonianParams base;  // control coupling is overwritten by the schedule
  Schedule schedule;
  /// Relaxation per segment; the physical duration of one segment stays
  /// fixed when M changes, so longer sequences see more decay.
  std::optional<DecoherenceParams> decoherence;
  Evolution evolution = Evolution::ExactSegmentwise;
  std::string output_path;
  std::uint64_t seed = 1;

  std::vector<int> m_list{2, 4, 8, 16, 32, 64};
  Range j2_range{0.0, 2.0, 41};
  Range j3_range{0.0, 2.0, 41};
  /// Set for a single-knob scan; unset for the (J2, J3) grid.
  std::optional<Knob> phase_knob;

  std::optional<NmrSystem> nmr;
  std::optional<double> pulse_tau;      // default: one schedule segment
  std::optional<double> pulse_control;  // default: schedule end value
};

/// Case presets. A: wz=-2, wx=0.09, J3=0, J2 0->2, T=200, centred sinh a=7,
/// T2=0.150 s over 0.146 s for 8 steps. B: wz=J2=0, wx=0.12, J3 0->2, T=150,
/// sinh a=3, T2=0.600 s over 0.062 s for 8 steps.
ExperimentConfig case_preset(CaseName c);

/// Throws std::invalid_argument with the offending line on malformed input,
/// unknown or repeated keys, and overrides that contradict a named case.
ExperimentConfig parse_config(std::istream& in, std::string_view source = "<config>");
ExperimentConfig load_config(const std::string& path);

/// Checks the whole configuration (Hamiltonian, schedule, decoherence, ranges).
void validate(const ExperimentConfig& cfg);

Range parse_range(std::string_view text);  // "lo:hi:samples"

struct TransitionEstimate {
  int step = 0;             // m of the later record of the largest jump
  double control_lo = 0.0;  // control at m - 1
  double control_hi = 0.0;  // control at m
  double jump = 0.0;        // signed change across that step
  double midpoint() const { return 0.5 * (control_lo + control_hi); }
};

/// Largest |value[m] - value[m-1]| over the trace; NaN entries are skipped.
TransitionEstimate largest_jump(const ScanTrace& trace, double ScanRecord::*field);

struct RunSummary {
  double witness_w = 0.0;
  double witness_ghz = 0.0;
  double witness_w_rescaled = 0.0;
  double witness_ghz_rescaled = 0.0;
  LocalFrame w_frame = LocalFrame::Computational;
  LocalFrame ghz_frame = LocalFrame::Computational;

  double fidelity_raw = 0.0;           // final ground-space population
  double fidelity_ideal = 0.0;         // same passage without relaxation
  double fidelity_experimental = 0.0;  // raw / tr(rho^2)
  double fidelity_rescaled = 0.0;      // decay envelope divided out
  RescaleResult decay;

  TransitionEstimate cxx_transition;
  TransitionEstimate witness_transition;
  bool witness_transition_uses_ghz = false;
};

struct RunResult {
  ScanTrace trace;
  RunSummary summary;
};

RunResult run_case(const ExperimentConfig& cfg);
std::vector<MSweepRow> run_msweep(const ExperimentConfig& cfg);
std::vector<ScanPoint> run_phase_grid(const ExperimentConfig& cfg);
KnobScan run_knob_scan(const ExperimentConfig& cfg);
/// Plan for H at the configured control value; requires nmr settings.
PulsePlan run_compile_pulse(const ExperimentConfig& cfg);

void write_trace_csv(std::ostream& os, const ExperimentConfig& cfg, const ScanTrace& trace);
void write_msweep_csv(std::ostream& os, const ExperimentConfig& cfg,
                      const std::vector<MSweepRow>& rows);
void write_phase_grid_csv(std::ostream& os, const ExperimentConfig& cfg,
                          const std::vector<ScanPoint>& points);
void write_knob_scan_csv(std::ostream& os, const ExperimentConfig& cfg, const KnobScan& scan);
void write_summary(std::ostream& os, const RunSummary& s);

/// Quick internal consistency checks; one PASS/FAIL line each.
bool run_selftest(std::uint64_t seed, std::ostream& os);

}  // namespace trispin
