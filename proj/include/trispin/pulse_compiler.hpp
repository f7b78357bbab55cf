// Compiles one symmetric Trotter step of the three-spin model into an
// abstract NMR schedule and simulates that schedule back to a unitary.
//
// Conventions: the natural Hamiltonian is sum (w_i/2) Z_i + sum (pi J_ij/2) Z_i Z_j
// with J in Hz and times in seconds; a hard pulse of angle theta about axis a
// is exp(-i theta/2 sigma_a); rotating-frame offsets are angular (rad/s).
// Model phases (coupling * tau) map one-to-one onto accumulated NMR phases.
//
// Refocusing is not laid out pulse by pulse. A coupling delay instead carries
// the sign each coupling ends up with after refocusing (+1, -1, or 0 for
// fully refocused), which is what the schedule must realise.
#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "trispin/hamiltonian.hpp"

namespace trispin {

struct NmrSystem {
  std::array<double, 3> larmor_hz{};  // informational
  /// J12, J13, J23 in Hz.
  std::array<double, 3> j_hz{};
  std::array<double, 3> t1{};  // informational
  std::array<double, 3> t2{};  // informational

  double coupling(int a, int b) const;
};

enum class Axis { X, Y, Z };

struct Rotation {
  unsigned spins = 0;  // bit (site - 1) set for each target
  Axis axis = Axis::X;
  double angle = 0.0;  // radians
};

struct CouplingDelay {
  double duration = 0.0;        // seconds
  std::array<int, 3> signs{};   // effective sign of J12, J13, J23 over the delay
};

struct OffsetPrecession {
  int spin = 1;
  double offset = 0.0;    // rad/s
  double duration = 0.0;  // seconds, signed total the offset acts for
};

using PulseElement = std::variant<Rotation, CouplingDelay, OffsetPrecession>;

/// Timings from the closed-form delay and offset expressions.
struct StepTimings {
  std::array<double, 3> tau{};             // tau_1..tau_3
  double d1 = 0.0;
  std::array<double, 3> offset_window{};   // tau1-tau2+3tau3, tau1+tau2-tau3, tau1+tau2+tau3
  std::array<double, 3> offset{};          // FQ1..FQ3 = 2 wz tau / window
  bool offsets_degenerate = false;
};

struct PulsePlan {
  HamiltonianParams target;
  double tau = 0.0;  // model time of the step
  StepTimings timings;
  std::vector<PulseElement> elements;  // time order
  /// Unrealisable or degenerate timings, one message each.
  std::vector<std::string> issues;

  bool realizable() const { return issues.empty(); }
};

/// Requires n_spins = 3 and nonzero J12, J13, J23. Offsets are flagged
/// degenerate when a window vanishes; the field is then realised with z pulses.
PulsePlan compile_step(const HamiltonianParams& p, double tau, const NmrSystem& sys);

/// Composes the ideal unitaries of the plan's elements (8x8).
ComplexMatrix simulate_plan(const PulsePlan& plan, const NmrSystem& sys);

/// |tr(U^dagger V)|^2 / d^2, insensitive to a global phase.
double process_fidelity(const ComplexMatrix& u, const ComplexMatrix& v);

/// Human-readable schedule listing.
std::string format_listing(const PulsePlan& plan);

/// One row per element: index,element,axis,targets,angle_rad,duration_s,offset_rad_s,signs.
std::string format_csv(const PulsePlan& plan);

}  // namespace trispin
