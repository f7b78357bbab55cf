#include "trispin/sweeps.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>
#include <string>

namespace trispin {

namespace {

// Runs body(i) for i in [0, n) across OpenMP threads. The first exception
// thrown by any iteration is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr error;
  const auto count = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(trispin_sweep_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

template <typename Body>
void serial_for(std::size_t n, Body&& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

void finish_min_gap(KnobScan& scan) {
  scan.min_gap_index = 0;
  for (std::size_t i = 1; i < scan.points.size(); ++i) {
    if (scan.points[i].gap < scan.points[scan.min_gap_index].gap) scan.min_gap_index = i;
  }
}

template <typename Loop>
KnobScan knob_scan_with(Loop&& loop, const HamiltonianParams& base, Knob knob,
                        const Range& range, const ClassifierThresholds& th) {
  validate(range);
  validate(base);
  KnobScan scan;
  scan.knob = knob;
  scan.points.resize(static_cast<std::size_t>(range.samples));
  loop(scan.points.size(), [&](std::size_t i) {
    scan.points[i] = evaluate_point(with_knob(base, knob, range.at(static_cast<int>(i))), th);
  });
  finish_min_gap(scan);
  return scan;
}

template <typename Loop>
std::vector<ScanPoint> grid_with(Loop&& loop, const HamiltonianParams& base, const Range& j2,
                                 const Range& j3, const ClassifierThresholds& th) {
  validate(j2);
  validate(j3);
  validate(base);
  const auto cols = static_cast<std::size_t>(j3.samples);
  std::vector<ScanPoint> out(static_cast<std::size_t>(j2.samples) * cols);
  loop(out.size(), [&](std::size_t i) {
    HamiltonianParams p = base;
    p.j2 = j2.at(static_cast<int>(i / cols));
    p.j3 = j3.at(static_cast<int>(i % cols));
    out[i] = evaluate_point(p, th);
  });
  return out;
}

template <typename Loop>
std::vector<MSweepRow> msweep_with(Loop&& loop, const HamiltonianParams& p0,
                                   const Schedule& templ, const DecoherenceParams& d,
                                   const std::vector<int>& steps_list, Evolution noisy_evolution) {
  if (steps_list.empty()) throw std::invalid_argument("step list must not be empty");
  std::vector<MSweepRow> rows(steps_list.size());
  loop(rows.size(), [&](std::size_t i) {
    rows[i] = min_fidelity_row(p0, templ, d, steps_list[i], noisy_evolution);
  });
  return rows;
}

}  // namespace

void validate(const Range& r) {
  if (r.samples < 2) throw std::invalid_argument("range needs at least 2 samples");
  if (!(r.hi >= r.lo)) throw std::invalid_argument("empty range: hi < lo");
}

double Range::at(int i) const {
  if (i <= 0) return lo;
  if (i >= samples - 1) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / (samples - 1);
}

double KnobScan::knob_at(std::size_t i) const {
  return knob == Knob::J2 ? points.at(i).j2 : points.at(i).j3;
}

ScanPoint evaluate_point(const HamiltonianParams& p, const ClassifierThresholds& th) {
  const GroundStateReport gs = ground_state_report(p);
  ScanPoint pt;
  pt.j2 = p.j2;
  pt.j3 = p.j3;
  pt.energy = gs.energy;
  pt.gap = gs.gap;
  pt.sector_gap = symmetric_sector_gap(p);
  pt.degeneracy = gs.degeneracy;
  pt.phase = p.n_spins == 3 ? classify_phase(gs, p, th) : Phase::Unclassified;
  return pt;
}

KnobScan critical_point_scan(const HamiltonianParams& base, Knob knob, const Range& range,
                             const ClassifierThresholds& th) {
  return knob_scan_with([](std::size_t n, auto&& f) { parallel_for(n, f); }, base, knob, range,
                        th);
}

std::vector<ScanPoint> phase_grid(const HamiltonianParams& base, const Range& j2,
                                  const Range& j3, const ClassifierThresholds& th) {
  return grid_with([](std::size_t n, auto&& f) { parallel_for(n, f); }, base, j2, j3, th);
}

std::vector<MSweepRow> min_fidelity_vs_steps(const HamiltonianParams& p0, const Schedule& templ,
                                             const DecoherenceParams& d,
                                             const std::vector<int>& steps_list,
                                             Evolution noisy_evolution) {
  return msweep_with([](std::size_t n, auto&& f) { parallel_for(n, f); }, p0, templ, d,
                     steps_list, noisy_evolution);
}

namespace reference {

KnobScan critical_point_scan(const HamiltonianParams& base, Knob knob, const Range& range,
                             const ClassifierThresholds& th) {
  return knob_scan_with([](std::size_t n, auto&& f) { serial_for(n, f); }, base, knob, range,
                        th);
}

std::vector<ScanPoint> phase_grid(const HamiltonianParams& base, const Range& j2,
                                  const Range& j3, const ClassifierThresholds& th) {
  return grid_with([](std::size_t n, auto&& f) { serial_for(n, f); }, base, j2, j3, th);
}

std::vector<MSweepRow> min_fidelity_vs_steps(const HamiltonianParams& p0, const Schedule& templ,
                                             const DecoherenceParams& d,
                                             const std::vector<int>& steps_list,
                                             Evolution noisy_evolution) {
  return msweep_with([](std::size_t n, auto&& f) { serial_for(n, f); }, p0, templ, d,
                     steps_list, noisy_evolution);
}

}  // namespace reference

}  // namespace trispin
