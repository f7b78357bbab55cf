#include "trispin/pulse_compiler.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace trispin {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kSpins = 3;

int pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  if (a == 1 && b == 2) return 0;
  if (a == 1 && b == 3) return 1;
  if (a == 2 && b == 3) return 2;
  throw std::invalid_argument("no coupling between spins " + std::to_string(a) + " and " +
                              std::to_string(b));
}

constexpr std::array<std::array<int, 2>, 3> kPairs = {{{1, 2}, {1, 3}, {2, 3}}};

unsigned spin_mask(int site) { return 1u << (site - 1); }

// Delay with only pair (a, b) active, accumulating exp(-i phase Z_a Z_b).
CouplingDelay single_pair_delay(int a, int b, double phase, const NmrSystem& sys) {
  const double j = sys.coupling(a, b);
  CouplingDelay d;
  d.duration = 2.0 * std::abs(phase) / (kPi * std::abs(j));
  const int sign = (phase < 0.0) != (j < 0.0) ? -1 : 1;
  d.signs[static_cast<std::size_t>(pair_index(a, b))] = phase == 0.0 ? 0 : sign;
  return d;
}

const char* axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
  }
  return "?";
}

std::string targets(unsigned spins) {
  std::string out;
  for (int s = 1; s <= kSpins; ++s) {
    if (spins & spin_mask(s)) {
      if (!out.empty()) out += ' ';
      out += std::to_string(s);
    }
  }
  return out;
}

ComplexMatrix rotation_unitary(const Rotation& r) {
  const Pauli pauli = r.axis == Axis::X ? Pauli::X : r.axis == Axis::Y ? Pauli::Y : Pauli::Z;
  ComplexMatrix u = ComplexMatrix::Identity(8, 8);
  for (int s = 1; s <= kSpins; ++s) {
    if (!(r.spins & spin_mask(s))) continue;
    const ComplexMatrix sigma = pauli_on_site(pauli, s, kSpins);
    u = (std::cos(r.angle / 2.0) * ComplexMatrix::Identity(8, 8) -
         cplx(0.0, std::sin(r.angle / 2.0)) * sigma) *
        u;
  }
  return u;
}

ComplexMatrix coupling_unitary(const CouplingDelay& d, const NmrSystem& sys) {
  ComplexMatrix u = ComplexMatrix::Identity(8, 8);
  for (Eigen::Index b = 0; b < 8; ++b) {
    double phase = 0.0;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
      const auto [i, j] = kPairs[k];
      phase += d.signs[k] * (kPi * sys.j_hz[k] / 2.0) * z_sign(b, i, kSpins) *
               z_sign(b, j, kSpins);
    }
    u(b, b) = std::exp(cplx(0.0, -phase * d.duration));
  }
  return u;
}

ComplexMatrix offset_unitary(const OffsetPrecession& o) {
  ComplexMatrix u = ComplexMatrix::Identity(8, 8);
  for (Eigen::Index b = 0; b < 8; ++b) {
    u(b, b) = std::exp(cplx(0.0, -(o.offset / 2.0) * o.duration * z_sign(b, o.spin, kSpins)));
  }
  return u;
}

}  // namespace

double NmrSystem::coupling(int a, int b) const {
  return j_hz[static_cast<std::size_t>(pair_index(a, b))];
}

PulsePlan compile_step(const HamiltonianParams& p, double tau, const NmrSystem& sys) {
  validate(p);
  if (p.n_spins != kSpins) throw std::invalid_argument("compile_step requires 3 spins");
  if (!std::isfinite(tau)) throw std::invalid_argument("compile_step: tau must be finite");
  for (double j : sys.j_hz) {
    if (j == 0.0 || !std::isfinite(j)) {
      throw std::invalid_argument("compile_step: J couplings must be nonzero");
    }
  }
  PulsePlan plan;
  plan.target = p;
  plan.tau = tau;

  // Delays: (i, j, k) runs over the even permutations of (1, 2, 3).
  StepTimings& t = plan.timings;
  constexpr std::array<std::array<int, 3>, 3> kEven = {{{1, 2, 3}, {2, 3, 1}, {3, 1, 2}}};
  for (std::size_t n = 0; n < 3; ++n) {
    const auto [i, j, k] = kEven[n];
    t.tau[n] = p.j2 * tau / (1.0 / (kPi * sys.coupling(i, j)) + 1.0 / (kPi * sys.coupling(j, k)));
  }
  t.d1 = 2.0 * p.j3 * tau / (kPi * sys.coupling(1, 2));
  t.offset_window = {t.tau[0] - t.tau[1] + 3.0 * t.tau[2], t.tau[0] + t.tau[1] - t.tau[2],
                     t.tau[0] + t.tau[1] + t.tau[2]};
  for (std::size_t s = 0; s < 3; ++s) {
    if (t.offset_window[s] == 0.0) {
      t.offsets_degenerate = true;
      t.offset[s] = 0.0;
    } else {
      t.offset[s] = 2.0 * p.omega_z * tau / t.offset_window[s];
    }
  }
  for (std::size_t n = 0; n < 3; ++n) {
    if (t.tau[n] < 0.0) plan.issues.push_back("tau_" + std::to_string(n + 1) + " is negative");
  }
  if (t.d1 < 0.0) plan.issues.push_back("d1 is negative");
  if (t.offsets_degenerate) {
    plan.issues.push_back("offset windows vanish: degenerate timing, field realised by z pulses");
  } else {
    for (std::size_t s = 0; s < 3; ++s) {
      if (t.offset_window[s] < 0.0) {
        plan.issues.push_back("offset window " + std::to_string(s + 1) + " is negative");
      }
    }
  }

  const unsigned all = spin_mask(1) | spin_mask(2) | spin_mask(3);
  auto& e = plan.elements;
  if (p.omega_x != 0.0) e.emplace_back(Rotation{all, Axis::X, p.omega_x * tau});

  // Two-body terms, one refocused delay per bond of the literal sum.
  for (const auto& [a, b] : pair_bonds(p.n_spins, p.periodic)) {
    if (p.j2 != 0.0) e.emplace_back(single_pair_delay(a, b, p.j2 * tau, sys));
  }

  // Three-body term: W exp(-i phi Z1 Z2) W^dagger with
  // W = Rx2(-pi/2) exp(+i pi/4 Z2 Z3) Ry2(pi/2), so that W Z1 Z2 W^dagger = Z1 Z2 Z3.
  const double phi = static_cast<double>(triple_bonds(p.n_spins, p.periodic).size()) * p.j3 * tau;
  if (phi != 0.0) {
    const unsigned s2 = spin_mask(2);
    e.emplace_back(Rotation{s2, Axis::X, kPi / 2.0});
    e.emplace_back(single_pair_delay(2, 3, kPi / 4.0, sys));
    e.emplace_back(Rotation{s2, Axis::Y, -kPi / 2.0});
    e.emplace_back(single_pair_delay(1, 2, phi, sys));
    e.emplace_back(Rotation{s2, Axis::Y, kPi / 2.0});
    e.emplace_back(single_pair_delay(2, 3, -kPi / 4.0, sys));
    e.emplace_back(Rotation{s2, Axis::X, -kPi / 2.0});
  }

  // Longitudinal field through rotating-frame offsets.
  if (p.omega_z != 0.0) {
    if (t.offsets_degenerate) {
      e.emplace_back(Rotation{all, Axis::Z, 2.0 * p.omega_z * tau});
    } else {
      for (int s = 1; s <= kSpins; ++s) {
        const auto idx = static_cast<std::size_t>(s - 1);
        e.emplace_back(OffsetPrecession{s, t.offset[idx], t.offset_window[idx]});
      }
    }
  }

  if (p.omega_x != 0.0) e.emplace_back(Rotation{all, Axis::X, p.omega_x * tau});
  return plan;
}

ComplexMatrix simulate_plan(const PulsePlan& plan, const NmrSystem& sys) {
  ComplexMatrix u = ComplexMatrix::Identity(8, 8);
  for (const auto& element : plan.elements) {
    const ComplexMatrix step = std::visit(
        [&](const auto& el) -> ComplexMatrix {
          using T = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<T, Rotation>) {
            if (el.spins == 0 || el.spins > 7u) throw std::invalid_argument("bad rotation targets");
            return rotation_unitary(el);
          } else if constexpr (std::is_same_v<T, CouplingDelay>) {
            return coupling_unitary(el, sys);
          } else {
            if (el.spin < 1 || el.spin > kSpins) throw std::invalid_argument("bad offset spin");
            return offset_unitary(el);
          }
        },
        element);
    u = step * u;
  }
  return u;
}

double process_fidelity(const ComplexMatrix& u, const ComplexMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols()) {
    throw std::invalid_argument("process_fidelity: shape mismatch");
  }
  const double d = static_cast<double>(u.rows());
  return std::norm((u.adjoint() * v).trace()) / (d * d);
}

std::string format_listing(const PulsePlan& plan) {
  std::ostringstream os;
  os.precision(10);
  const auto& p = plan.target;
  const auto& t = plan.timings;
  os << "# step tau=" << plan.tau << " wz=" << p.omega_z << " wx=" << p.omega_x
     << " J2=" << p.j2 << " J3=" << p.j3 << (p.periodic ? " periodic" : " open") << "\n";
  os << "# tau_1=" << t.tau[0] << " tau_2=" << t.tau[1] << " tau_3=" << t.tau[2]
     << " d1=" << t.d1 << "\n";
  os << "# FQ1=" << t.offset[0] << " FQ2=" << t.offset[1] << " FQ3=" << t.offset[2]
     << (t.offsets_degenerate ? " (degenerate)" : "") << "\n";
  for (const auto& issue : plan.issues) os << "# warning: " << issue << "\n";
  int index = 0;
  for (const auto& element : plan.elements) {
    os << index++ << "  ";
    std::visit(
        [&](const auto& el) {
          using T = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<T, Rotation>) {
            os << "pulse   " << axis_name(el.axis) << "  angle " << el.angle << " rad  spins "
               << targets(el.spins);
          } else if constexpr (std::is_same_v<T, CouplingDelay>) {
            os << "delay   " << el.duration << " s  J12:" << el.signs[0] << " J13:" << el.signs[1]
               << " J23:" << el.signs[2];
          } else {
            os << "offset  " << el.offset << " rad/s for " << el.duration << " s  spin "
               << el.spin;
          }
        },
        element);
    os << "\n";
  }
  return os.str();
}

std::string format_csv(const PulsePlan& plan) {
  std::ostringstream os;
  os.precision(17);
  os << "index,element,axis,targets,angle_rad,duration_s,offset_rad_s,signs\n";
  int index = 0;
  for (const auto& element : plan.elements) {
    os << index++ << ',';
    std::visit(
        [&](const auto& el) {
          using T = std::decay_t<decltype(el)>;
          if constexpr (std::is_same_v<T, Rotation>) {
            os << "pulse," << axis_name(el.axis) << ',' << targets(el.spins) << ',' << el.angle
               << ",,,";
          } else if constexpr (std::is_same_v<T, CouplingDelay>) {
            os << "delay,,,," << el.duration << ",," << el.signs[0] << ' ' << el.signs[1] << ' '
               << el.signs[2];
          } else {
            os << "offset,z," << el.spin << ",," << el.duration << ',' << el.offset << ',';
          }
        },
        element);
    os << "\n";
  }
  return os.str();
}

}  // namespace trispin
