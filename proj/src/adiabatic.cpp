#include "trispin/adiabatic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "trispin/ground_state.hpp"

namespace trispin {

std::string_view to_string(ScheduleShape shape) {
  return shape == ScheduleShape::HyperbolicSine ? "sinh" : "linear";
}

std::string_view to_string(Evolution e) {
  return e == Evolution::TrotterSequence ? "trotter" : "exact";
}

void validate(const Schedule& s) {
  if (s.steps < 1) throw std::invalid_argument("schedule needs at least one step");
  if (!(s.total_time > 0.0) || !std::isfinite(s.total_time)) {
    throw std::invalid_argument("schedule total time must be positive");
  }
  if (s.substeps < 1) throw std::invalid_argument("schedule substeps must be >= 1");
  if (s.shape == ScheduleShape::HyperbolicSine) {
    if (!(s.sinh_sharpness > 0.0)) throw std::invalid_argument("sinh sharpness must be positive");
    if (!(s.sinh_center >= 0.0 && s.sinh_center <= 1.0)) {
      throw std::invalid_argument("sinh center must lie in [0, 1]");
    }
  }
}

double control_value(const Schedule& s, int m) {
  validate(s);
  if (m < 0 || m > s.steps) {
    throw std::out_of_range("control_value: m=" + std::to_string(m) + " outside 0.." +
                            std::to_string(s.steps));
  }
  if (m == 0) return s.c_start;
  if (m == s.steps) return s.c_end;
  const double frac = static_cast<double>(m) / s.steps;
  double progress = frac;
  if (s.shape == ScheduleShape::HyperbolicSine) {
    const double a = s.sinh_sharpness;
    const double c = s.sinh_center;
    auto f = [&](double x) { return std::sinh(a * (x - c)); };
    progress = (f(frac) - f(0.0)) / (f(1.0) - f(0.0));
  }
  return s.c_start + (s.c_end - s.c_start) * progress;
}

ComplexMatrix trotter_step_unitary(const HamiltonianParams& p, double tau) {
  const SplitHamiltonian h = split_xz(p);
  const ComplexMatrix half_x = unitary_exp(h.hx, tau / 2.0);
  return half_x * unitary_exp(h.hz, tau) * half_x;
}

void validate(const DecoherenceParams& d) {
  if (!(d.t2_eff > 0.0)) throw std::invalid_argument("t2_eff must be positive");
  if (!(d.t1 > 0.0)) throw std::invalid_argument("t1 must be positive");
  if (std::isfinite(d.t1) && d.t2_eff > 2.0 * d.t1) {
    throw std::invalid_argument("t2_eff must not exceed 2 * t1");
  }
  if (!(d.step_duration >= 0.0) || !std::isfinite(d.step_duration)) {
    throw std::invalid_argument("step duration must be finite and non-negative");
  }
}

DensityMatrix apply_decoherence(const DensityMatrix& rho, const DecoherenceParams& d,
                                double duration) {
  validate(d);
  if (!(duration >= 0.0)) throw std::invalid_argument("decoherence duration must be >= 0");
  const double gamma = std::isfinite(d.t1) ? -std::expm1(-duration / d.t1) : 0.0;
  const double keep_off = std::sqrt(1.0 - gamma);
  // Coherence factor from T2 in total, less what amplitude damping already removes.
  const double dephase_rate =
      (std::isfinite(d.t2_eff) ? 1.0 / d.t2_eff : 0.0) - (std::isfinite(d.t1) ? 0.5 / d.t1 : 0.0);
  const double lambda = std::exp(-duration * std::max(0.0, dephase_rate));
  if (gamma == 0.0 && lambda == 1.0) return rho;

  const Eigen::Index dim = rho.dim();
  ComplexMatrix cur = rho.matrix();
  ComplexMatrix next(dim, dim);
  for (Eigen::Index mask = 1; mask < dim; mask <<= 1) {
#pragma omp parallel for collapse(2) if (dim >= 256)
    for (Eigen::Index col = 0; col < dim; ++col) {
      for (Eigen::Index row = 0; row < dim; ++row) {
        const bool r_down = (row & mask) != 0;
        const bool c_down = (col & mask) != 0;
        cplx v = cur(row, col);
        if (!r_down && !c_down) {
          v += gamma * cur(row | mask, col | mask);
        } else if (r_down && c_down) {
          v *= (1.0 - gamma);
        } else {
          v *= keep_off * lambda;
        }
        next(row, col) = v;
      }
    }
    cur.swap(next);
  }
  return DensityMatrix(std::move(cur), DensityMatrix::Unchecked{});
}

double ScanTrace::min_fidelity() const {
  double lo = std::numeric_limits<double>::infinity();
  for (const auto& r : records) lo = std::min(lo, r.fidelity);
  return lo;
}

namespace {

ScanRecord make_record(int m, double time, double control, const HamiltonianParams& p,
                       DensityMatrix state, const std::optional<WitnessPair>& witnesses) {
  const GroundStateReport gs = ground_state_report(p);
  ScanRecord r{m, time, control, std::move(state), gs.ground_space.front()};
  double population = 0.0;
  for (const auto& g : gs.ground_space) population += g.dot(r.state.matrix() * g).real();
  r.fidelity = std::clamp(population, 0.0, 1.0);
  r.purity = r.state.purity();
  r.energy = (r.state.matrix() * build_hamiltonian(p)).trace().real();
  if (witnesses) {
    r.c_xx = correlation_xx(r.state).c_xx;
    r.witness_w = witness_expectation(r.state, witnesses->w);
    r.witness_ghz = witness_expectation(r.state, witnesses->ghz);
  } else {
    r.c_xx = r.witness_w = r.witness_ghz = std::numeric_limits<double>::quiet_NaN();
  }
  return r;
}

}  // namespace

ScanTrace run_adiabatic_scan(const HamiltonianParams& p0, const Schedule& s,
                             const std::optional<DecoherenceParams>& d, Evolution evolution) {
  validate(p0);
  validate(s);
  if (d) {
    validate(*d);
    if (d->granularity == DecoherenceGranularity::PerSubstep &&
        evolution != Evolution::TrotterSequence) {
      throw std::invalid_argument("per-substep decoherence requires Trotter evolution");
    }
  }
  const HamiltonianParams start = with_knob(p0, s.control, s.c_start);
  const GroundStateReport initial = ground_state_report(start);
  if (initial.degeneracy != 1) {
    throw std::invalid_argument("initial ground state is " + std::to_string(initial.degeneracy) +
                                "-fold degenerate");
  }

  ScanTrace trace;
  if (p0.n_spins == 3) {
    const HamiltonianParams end = with_knob(p0, s.control, s.c_end);
    trace.witnesses = witnesses_for_target(ground_state_report(end).ground_space.front());
  }

  DensityMatrix rho = DensityMatrix::pure(initial.ground_space.front());
  trace.records.push_back(make_record(0, 0.0, s.c_start, start, rho, trace.witnesses));

  const double tau = segment_duration(s);
  for (int m = 1; m <= s.steps; ++m) {
    const double c = control_value(s, m);
    const HamiltonianParams p = with_knob(p0, s.control, c);
    if (evolution == Evolution::ExactSegmentwise) {
      rho = rho.evolved(unitary_exp(build_hamiltonian(p), tau));
    } else {
      const ComplexMatrix u = trotter_step_unitary(p, tau / s.substeps);
      for (int k = 0; k < s.substeps; ++k) {
        rho = rho.evolved(u);
        if (d && d->granularity == DecoherenceGranularity::PerSubstep) {
          rho = apply_decoherence(rho, *d, d->step_duration / s.substeps);
        }
      }
    }
    if (d && d->granularity == DecoherenceGranularity::PerSegment) {
      rho = apply_decoherence(rho, *d);
    }
    trace.records.push_back(make_record(m, m * tau, c, p, rho, trace.witnesses));
  }
  return trace;
}

MSweepRow min_fidelity_row(const HamiltonianParams& p0, const Schedule& templ,
                           const DecoherenceParams& d, int steps, Evolution noisy_evolution) {
  Schedule s = templ;
  s.steps = steps;
  MSweepRow row;
  row.steps = steps;
  row.ideal_min_fidelity =
      run_adiabatic_scan(p0, s, std::nullopt, Evolution::ExactSegmentwise).min_fidelity();
  row.noisy_min_fidelity = run_adiabatic_scan(p0, s, d, noisy_evolution).min_fidelity();
  return row;
}

}  // namespace trispin
