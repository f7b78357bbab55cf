#include "trispin/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace trispin {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos == std::string_view::npos ? pos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view text) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* end = t.data() + t.size();
  std::string_view body = t;
  if (!body.empty() && body.front() == '+') body.remove_prefix(1);
  if (body == "inf") return std::numeric_limits<double>::infinity();
  const auto [ptr, ec] = std::from_chars(body.data(), end, v);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw std::invalid_argument("not a number: '" + t + "'");
  }
  return v;
}

long long parse_integer(std::string_view text) {
  const std::string t = trim(text);
  long long v = 0;
  const char* end = t.data() + t.size();
  const auto [ptr, ec] = std::from_chars(t.data(), end, v);
  if (ec != std::errc() || ptr != end || t.empty()) {
    throw std::invalid_argument("not an integer: '" + t + "'");
  }
  return v;
}

int parse_int(std::string_view text) {
  const long long v = parse_integer(text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw std::invalid_argument("integer out of range: '" + std::string(text) + "'");
  }
  return static_cast<int>(v);
}

bool parse_bool(std::string_view text) {
  const std::string t = trim(text);
  if (t == "true" || t == "yes" || t == "on" || t == "1") return true;
  if (t == "false" || t == "no" || t == "off" || t == "0") return false;
  throw std::invalid_argument("not a boolean: '" + t + "'");
}

std::array<double, 3> parse_triple(std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 3) throw std::invalid_argument("expected three comma-separated values");
  return {parse_double(parts[0]), parse_double(parts[1]), parse_double(parts[2])};
}

ScheduleShape shape_from_string(std::string_view s) {
  if (s == "sinh") return ScheduleShape::HyperbolicSine;
  if (s == "linear") return ScheduleShape::Linear;
  throw std::invalid_argument("unknown schedule shape '" + std::string(s) + "'");
}

Evolution evolution_from_string(std::string_view s) {
  if (s == "trotter") return Evolution::TrotterSequence;
  if (s == "exact") return Evolution::ExactSegmentwise;
  throw std::invalid_argument("unknown evolution '" + std::string(s) + "'");
}

DecoherenceGranularity granularity_from_string(std::string_view s) {
  if (s == "segment") return DecoherenceGranularity::PerSegment;
  if (s == "substep") return DecoherenceGranularity::PerSubstep;
  throw std::invalid_argument("unknown decoherence granularity '" + std::string(s) + "'");
}

struct Entry {
  std::string value;
  int line = 0;
};

// Decoherence keys are gathered first because the step duration can be
// given directly or as a total over a reference number of steps.
struct DecoherenceKeys {
  std::optional<bool> enabled;
  std::optional<double> t2_eff, t1, step_duration, total_duration;
  std::optional<int> reference_steps;
  std::optional<DecoherenceGranularity> granularity;
};

void apply_key(ExperimentConfig& cfg, DecoherenceKeys& dk, const std::string& key,
               const std::string& v) {
  auto& h = cfg.base;
  auto& s = cfg.schedule;
  if (key == "hamiltonian.omega_z") h.omega_z = parse_double(v);
  else if (key == "hamiltonian.omega_x") h.omega_x = parse_double(v);
  else if (key == "hamiltonian.j2") h.j2 = parse_double(v);
  else if (key == "hamiltonian.j3") h.j3 = parse_double(v);
  else if (key == "hamiltonian.n_spins") h.n_spins = parse_int(v);
  else if (key == "hamiltonian.periodic") h.periodic = parse_bool(v);
  else if (key == "schedule.control") s.control = knob_from_string(v);
  else if (key == "schedule.c_start") s.c_start = parse_double(v);
  else if (key == "schedule.c_end") s.c_end = parse_double(v);
  else if (key == "schedule.T") s.total_time = parse_double(v);
  else if (key == "schedule.M") s.steps = parse_int(v);
  else if (key == "schedule.shape") s.shape = shape_from_string(v);
  else if (key == "schedule.sharpness") s.sinh_sharpness = parse_double(v);
  else if (key == "schedule.center") s.sinh_center = parse_double(v);
  else if (key == "schedule.substeps") s.substeps = parse_int(v);
  else if (key == "decoherence.enabled") dk.enabled = parse_bool(v);
  else if (key == "decoherence.t2_eff") dk.t2_eff = parse_double(v);
  else if (key == "decoherence.t1") dk.t1 = parse_double(v);
  else if (key == "decoherence.step_duration") dk.step_duration = parse_double(v);
  else if (key == "decoherence.total_duration") dk.total_duration = parse_double(v);
  else if (key == "decoherence.reference_steps") dk.reference_steps = parse_int(v);
  else if (key == "decoherence.granularity") dk.granularity = granularity_from_string(v);
  else if (key == "evolution") cfg.evolution = evolution_from_string(v);
  else if (key == "output.path") cfg.output_path = v;
  else if (key == "seed") {
    const long long seed = parse_integer(v);
    if (seed < 0) throw std::invalid_argument("seed must be non-negative");
    cfg.seed = static_cast<std::uint64_t>(seed);
  } else if (key == "msweep.M_list") {
    cfg.m_list.clear();
    for (const auto& part : split(v, ',')) cfg.m_list.push_back(parse_int(part));
  } else if (key == "phasescan.j2") cfg.j2_range = parse_range(v);
  else if (key == "phasescan.j3") cfg.j3_range = parse_range(v);
  else if (key == "phasescan.knob") {
    if (v == "grid") cfg.phase_knob.reset();
    else cfg.phase_knob = knob_from_string(v);
  } else if (key == "nmr.larmor") {
    if (!cfg.nmr) cfg.nmr = NmrSystem{};
    cfg.nmr->larmor_hz = parse_triple(v);
  } else if (key == "nmr.j") {
    if (!cfg.nmr) cfg.nmr = NmrSystem{};
    cfg.nmr->j_hz = parse_triple(v);
  } else if (key == "nmr.t1") {
    if (!cfg.nmr) cfg.nmr = NmrSystem{};
    cfg.nmr->t1 = parse_triple(v);
  } else if (key == "nmr.t2") {
    if (!cfg.nmr) cfg.nmr = NmrSystem{};
    cfg.nmr->t2 = parse_triple(v);
  } else if (key == "pulse.tau") cfg.pulse_tau = parse_double(v);
  else if (key == "pulse.control") cfg.pulse_control = parse_double(v);
  else throw std::invalid_argument("unknown key '" + key + "'");
}

void finish_decoherence(ExperimentConfig& cfg, const DecoherenceKeys& dk) {
  const bool any_value = dk.t2_eff || dk.t1 || dk.step_duration || dk.total_duration ||
                         dk.reference_steps || dk.granularity;
  if (dk.enabled && !*dk.enabled) {
    cfg.decoherence.reset();
    return;
  }
  if (!any_value) {
    if (dk.enabled && !cfg.decoherence) {
      throw std::invalid_argument("decoherence.enabled = true needs decoherence.t2_eff");
    }
    return;
  }
  DecoherenceParams d = cfg.decoherence.value_or(DecoherenceParams{});
  if (dk.t2_eff) d.t2_eff = *dk.t2_eff;
  if (dk.t1) d.t1 = *dk.t1;
  if (dk.granularity) d.granularity = *dk.granularity;
  if (dk.step_duration && (dk.total_duration || dk.reference_steps)) {
    throw std::invalid_argument(
        "give either decoherence.step_duration or decoherence.total_duration, not both");
  }
  if (dk.step_duration) d.step_duration = *dk.step_duration;
  if (dk.total_duration || dk.reference_steps) {
    const int ref = dk.reference_steps.value_or(8);
    if (ref < 1) throw std::invalid_argument("decoherence.reference_steps must be >= 1");
    const double total = dk.total_duration ? *dk.total_duration : d.step_duration * 8.0;
    d.step_duration = total / ref;
  }
  cfg.decoherence = d;
}

void check_named_case(const ExperimentConfig& cfg) {
  if (cfg.name == CaseName::Custom) return;
  const ExperimentConfig preset = case_preset(cfg.name);
  const std::string name(to_string(cfg.name));
  if (!(cfg.base == preset.base)) {
    throw std::invalid_argument("case " + name +
                                " fixes the hamiltonian.* values; use case = custom to change them");
  }
  if (cfg.schedule.control != preset.schedule.control ||
      cfg.schedule.c_start != preset.schedule.c_start ||
      cfg.schedule.c_end != preset.schedule.c_end) {
    throw std::invalid_argument(
        "case " + name +
        " fixes schedule.control, c_start and c_end; use case = custom to change them");
  }
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

void write_header(std::ostream& os, std::string_view schema, const ExperimentConfig& cfg) {
  os << "#schema=" << schema << "\n";
  os << "# case=" << to_string(cfg.name) << " evolution=" << to_string(cfg.evolution)
     << " M=" << cfg.schedule.steps << " T=" << fmt(cfg.schedule.total_time)
     << " decoherence=" << (cfg.decoherence ? "on" : "off") << " seed=" << cfg.seed << "\n";
}

}  // namespace

std::string_view to_string(CaseName c) {
  switch (c) {
    case CaseName::A: return "A";
    case CaseName::B: return "B";
    case CaseName::Custom: return "custom";
  }
  return "?";
}

CaseName case_from_string(std::string_view name) {
  if (name == "A" || name == "a") return CaseName::A;
  if (name == "B" || name == "b") return CaseName::B;
  if (name == "custom") return CaseName::Custom;
  throw std::invalid_argument("unknown case '" + std::string(name) + "' (expected A, B, custom)");
}

ExperimentConfig case_preset(CaseName c) {
  ExperimentConfig cfg;
  cfg.name = c;
  DecoherenceParams d;
  if (c == CaseName::B) {
    cfg.base = {0.0, 0.12, 0.0, 0.0, 3, true};
    cfg.schedule.control = Knob::J3;
    cfg.schedule.total_time = 150.0;
    cfg.schedule.sinh_sharpness = 3.0;
    cfg.schedule.sinh_center = 0.0;
    d.t2_eff = 0.600;
    d.step_duration = 0.062 / 8.0;
  } else {
    cfg.base = {-2.0, 0.09, 0.0, 0.0, 3, true};
    cfg.schedule.control = Knob::J2;
    cfg.schedule.total_time = 200.0;
    cfg.schedule.sinh_sharpness = 7.0;
    cfg.schedule.sinh_center = 0.5;
    d.t2_eff = 0.150;
    d.step_duration = 0.146 / 8.0;
  }
  cfg.schedule.c_start = 0.0;
  cfg.schedule.c_end = 2.0;
  cfg.schedule.steps = 8;
  cfg.schedule.shape = ScheduleShape::HyperbolicSine;
  cfg.decoherence = d;
  return cfg;
}

Range parse_range(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw std::invalid_argument("range must be lo:hi:samples");
  Range r{parse_double(parts[0]), parse_double(parts[1]), parse_int(parts[2])};
  validate(r);
  return r;
}

ExperimentConfig parse_config(std::istream& in, std::string_view source) {
  std::map<std::string, Entry> entries;
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    const std::string body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    const auto eq = body.find('=');
    const auto where = std::string(source) + ":" + std::to_string(number);
    if (eq == std::string::npos) throw std::invalid_argument(where + ": expected key = value");
    const std::string key = trim(std::string_view(body).substr(0, eq));
    const std::string value = trim(std::string_view(body).substr(eq + 1));
    if (key.empty() || value.empty()) throw std::invalid_argument(where + ": empty key or value");
    if (!entries.emplace(key, Entry{value, number}).second) {
      throw std::invalid_argument(where + ": key '" + key + "' repeated");
    }
  }
  const auto case_it = entries.find("case");
  if (case_it == entries.end()) {
    throw std::invalid_argument(std::string(source) + ": missing 'case' (A, B or custom)");
  }
  const CaseName name = case_from_string(case_it->second.value);
  ExperimentConfig cfg = case_preset(name == CaseName::Custom ? CaseName::A : name);
  cfg.name = name;
  DecoherenceKeys dk;
  for (const auto& [key, entry] : entries) {
    if (key == "case") continue;
    try {
      apply_key(cfg, dk, key, entry.value);
    } catch (const std::exception& e) {
      throw std::invalid_argument(std::string(source) + ":" + std::to_string(entry.line) + ": " +
                                  e.what());
    }
  }
  finish_decoherence(cfg, dk);
  check_named_case(cfg);
  validate(cfg);
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config '" + path + "'");
  return parse_config(in, path);
}

void validate(const ExperimentConfig& cfg) {
  validate(cfg.base);
  validate(cfg.schedule);
  validate(with_knob(cfg.base, cfg.schedule.control, cfg.schedule.c_end));
  if (cfg.decoherence) validate(*cfg.decoherence);
  validate(cfg.j2_range);
  validate(cfg.j3_range);
  if (cfg.m_list.empty()) throw std::invalid_argument("msweep.M_list must not be empty");
  for (int m : cfg.m_list) {
    if (m < 1) throw std::invalid_argument("msweep.M_list entries must be >= 1");
  }
}

TransitionEstimate largest_jump(const ScanTrace& trace, double ScanRecord::*field) {
  TransitionEstimate best;
  double best_abs = -1.0;
  for (std::size_t m = 1; m < trace.records.size(); ++m) {
    const auto& prev = trace.records[m - 1];
    const auto& cur = trace.records[m];
    const double jump = cur.*field - prev.*field;
    if (std::isnan(jump)) continue;
    if (std::abs(jump) > best_abs) {
      best_abs = std::abs(jump);
      best = {cur.m, prev.control, cur.control, jump};
    }
  }
  return best;
}

RunResult run_case(const ExperimentConfig& cfg) {
  validate(cfg);
  RunResult result;
  result.trace = run_adiabatic_scan(cfg.base, cfg.schedule, cfg.decoherence, cfg.evolution);
  const ScanTrace& trace = result.trace;
  const ScanRecord& last = trace.final_record();
  RunSummary& s = result.summary;

  s.fidelity_raw = last.fidelity;
  s.fidelity_ideal =
      cfg.decoherence
          ? run_adiabatic_scan(cfg.base, cfg.schedule, std::nullopt, cfg.evolution)
                .final_record()
                .fidelity
          : last.fidelity;
  s.fidelity_experimental = s.fidelity_raw / last.purity;

  std::vector<SeriesPoint> fid, norms;
  std::vector<double> steps, ww, wg;
  for (const auto& r : trace.records) {
    fid.push_back({static_cast<double>(r.m), r.fidelity});
    norms.push_back({static_cast<double>(r.m), signal_magnitude(r.state)});
    steps.push_back(static_cast<double>(r.m));
    ww.push_back(r.witness_w);
    wg.push_back(r.witness_ghz);
  }
  s.decay = rescale_decay(fid, norms);
  const double dim = static_cast<double>(last.state.dim());
  const double envelope = s.decay.envelope(static_cast<double>(last.m));
  s.fidelity_rescaled = 1.0 / dim + (s.fidelity_raw - 1.0 / dim) / envelope;

  s.witness_w = last.witness_w;
  s.witness_ghz = last.witness_ghz;
  if (trace.witnesses) {
    s.w_frame = trace.witnesses->w_frame;
    s.ghz_frame = trace.witnesses->ghz_frame;
    const auto dimi = last.state.dim();
    s.witness_w_rescaled =
        rescale_witness(ww, steps, s.decay, trace.witnesses->w.offset, dimi).back();
    s.witness_ghz_rescaled =
        rescale_witness(wg, steps, s.decay, trace.witnesses->ghz.offset, dimi).back();
  } else {
    s.witness_w_rescaled = s.witness_ghz_rescaled = std::numeric_limits<double>::quiet_NaN();
  }

  s.cxx_transition = largest_jump(trace, &ScanRecord::c_xx);
  // The witness that ends lower is the one detecting the endpoint's class.
  s.witness_transition_uses_ghz = last.witness_ghz < last.witness_w;
  s.witness_transition = largest_jump(
      trace, s.witness_transition_uses_ghz ? &ScanRecord::witness_ghz : &ScanRecord::witness_w);
  return result;
}

std::vector<MSweepRow> run_msweep(const ExperimentConfig& cfg) {
  validate(cfg);
  return min_fidelity_vs_steps(cfg.base, cfg.schedule, cfg.decoherence.value_or(DecoherenceParams{}),
                               cfg.m_list, cfg.evolution);
}

std::vector<ScanPoint> run_phase_grid(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.base.n_spins != 3) throw std::invalid_argument("phase scans need n_spins = 3");
  return phase_grid(cfg.base, cfg.j2_range, cfg.j3_range);
}

KnobScan run_knob_scan(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.base.n_spins != 3) throw std::invalid_argument("phase scans need n_spins = 3");
  const Knob knob = cfg.phase_knob.value_or(cfg.schedule.control);
  return critical_point_scan(cfg.base, knob, knob == Knob::J2 ? cfg.j2_range : cfg.j3_range);
}

PulsePlan run_compile_pulse(const ExperimentConfig& cfg) {
  validate(cfg);
  if (!cfg.nmr) throw std::invalid_argument("compile-pulse needs nmr.j couplings in the config");
  const double control = cfg.pulse_control.value_or(cfg.schedule.c_end);
  const double tau = cfg.pulse_tau.value_or(segment_duration(cfg.schedule));
  return compile_step(with_knob(cfg.base, cfg.schedule.control, control), tau, *cfg.nmr);
}

void write_trace_csv(std::ostream& os, const ExperimentConfig& cfg, const ScanTrace& trace) {
  write_header(os, "trispin-run-v1", cfg);
  os << "m,t,control,fidelity,purity,C_xx,witness_W,witness_GHZ,energy\n";
  for (const auto& r : trace.records) {
    os << r.m << ',' << fmt(r.time) << ',' << fmt(r.control) << ',' << fmt(r.fidelity) << ','
       << fmt(r.purity) << ',' << fmt(r.c_xx) << ',' << fmt(r.witness_w) << ','
       << fmt(r.witness_ghz) << ',' << fmt(r.energy) << '\n';
  }
}

void write_msweep_csv(std::ostream& os, const ExperimentConfig& cfg,
                      const std::vector<MSweepRow>& rows) {
  write_header(os, "trispin-msweep-v1", cfg);
  os << "M,ideal,noisy\n";
  for (const auto& r : rows) {
    os << r.steps << ',' << fmt(r.ideal_min_fidelity) << ',' << fmt(r.noisy_min_fidelity) << '\n';
  }
}

void write_phase_grid_csv(std::ostream& os, const ExperimentConfig& cfg,
                          const std::vector<ScanPoint>& points) {
  write_header(os, "trispin-phasegrid-v1", cfg);
  os << "j2,j3,energy,gap,sector_gap,degeneracy,phase\n";
  for (const auto& p : points) {
    os << fmt(p.j2) << ',' << fmt(p.j3) << ',' << fmt(p.energy) << ',' << fmt(p.gap) << ','
       << fmt(p.sector_gap) << ',' << p.degeneracy << ',' << to_string(p.phase) << '\n';
  }
}

void write_knob_scan_csv(std::ostream& os, const ExperimentConfig& cfg, const KnobScan& scan) {
  write_header(os, "trispin-knobscan-v1", cfg);
  os << "# knob=" << to_string(scan.knob) << " min_gap_at=" << fmt(scan.knob_at(scan.min_gap_index))
     << "\n";
  os << "knob,energy,gap,sector_gap,degeneracy,phase\n";
  for (std::size_t i = 0; i < scan.points.size(); ++i) {
    const auto& p = scan.points[i];
    os << fmt(scan.knob_at(i)) << ',' << fmt(p.energy) << ',' << fmt(p.gap) << ','
       << fmt(p.sector_gap) << ',' << p.degeneracy << ',' << to_string(p.phase) << '\n';
  }
}

void write_summary(std::ostream& os, const RunSummary& s) {
  os << "final witness W   (" << to_string(s.w_frame) << " frame): raw " << fmt(s.witness_w)
     << "  rescaled " << fmt(s.witness_w_rescaled) << "\n";
  os << "final witness GHZ (" << to_string(s.ghz_frame) << " frame): raw " << fmt(s.witness_ghz)
     << "  rescaled " << fmt(s.witness_ghz_rescaled) << "\n";
  os << "final fidelity: raw " << fmt(s.fidelity_raw) << "  ideal " << fmt(s.fidelity_ideal)
     << "  experimental " << fmt(s.fidelity_experimental) << "  rescaled "
     << fmt(s.fidelity_rescaled) << "\n";
  os << "decay fit: rate " << fmt(s.decay.decay_rate) << " per step";
  if (!s.decay.warning.empty()) os << " (" << s.decay.warning << ")";
  os << "\n";
  os << "transition (max |dC_xx|): step " << s.cxx_transition.step << ", control "
     << fmt(s.cxx_transition.control_lo) << " -> " << fmt(s.cxx_transition.control_hi)
     << " (mid " << fmt(s.cxx_transition.midpoint()) << "), jump " << fmt(s.cxx_transition.jump)
     << "\n";
  os << "transition (max |dW_" << (s.witness_transition_uses_ghz ? "GHZ" : "W") << "|): step "
     << s.witness_transition.step << ", control " << fmt(s.witness_transition.control_lo) << " -> "
     << fmt(s.witness_transition.control_hi) << " (mid " << fmt(s.witness_transition.midpoint())
     << "), jump " << fmt(s.witness_transition.jump) << "\n";
}

bool run_selftest(std::uint64_t seed, std::ostream& os) {
  bool all = true;
  auto check = [&](const std::string& name, bool ok, const std::string& detail = {}) {
    os << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) os << "  (" << detail << ")";
    os << "\n";
    all = all && ok;
  };
  auto guarded = [&](const std::string& name, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      check(name, false, e.what());
    }
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 1.0);

  guarded("pauli algebra", [&] {
    const ComplexMatrix xy = pauli_on_site(Pauli::X, 2, 3) * pauli_on_site(Pauli::Y, 2, 3);
    const ComplexMatrix iz = cplx(0.0, 1.0) * pauli_on_site(Pauli::Z, 2, 3);
    const double err = max_abs_diff(xy, iz);
    check("pauli algebra", err < 1e-14, "|XY - iZ| = " + fmt(err));
  });

  guarded("endpoint phases", [&] {
    const auto a = evaluate_point({-2.0, 0.09, 2.0, 0.0, 3, true});
    const auto b = evaluate_point({0.0, 0.12, 0.0, 2.0, 3, true});
    check("endpoint phases", a.phase == Phase::WType && b.phase == Phase::GHZType,
          std::string(to_string(a.phase)) + ", " + std::string(to_string(b.phase)));
  });

  guarded("witness exemplars", [&] {
    const double w = witness_expectation(DensityMatrix::pure(w_state()), w_witness());
    const double g = witness_expectation(DensityMatrix::pure(ghz_state(-1)), ghz_witness());
    check("witness exemplars", std::abs(w + 1.0 / 3.0) < 1e-9 && std::abs(g + 0.25) < 1e-9,
          fmt(w) + ", " + fmt(g));
  });

  guarded("witnesses on product states", [&] {
    double lowest = std::numeric_limits<double>::infinity();
    for (int n = 0; n < 200; ++n) {
      StateVector psi = StateVector::Ones(1);
      for (int q = 0; q < 3; ++q) {
        const double theta = std::acos(2.0 * uni(rng) - 1.0);
        const double phi = 2.0 * std::numbers::pi * uni(rng);
        StateVector one(2);
        one << std::cos(theta / 2.0), std::polar(std::sin(theta / 2.0), phi);
        psi = kron(psi, one);
      }
      const DensityMatrix rho = DensityMatrix::pure(psi);
      for (LocalFrame f : {LocalFrame::Computational, LocalFrame::GlobalFlip, LocalFrame::Hadamard}) {
        lowest = std::min({lowest, witness_expectation(rho, w_witness(f)),
                           witness_expectation(rho, ghz_witness(f))});
      }
    }
    check("witnesses on product states", lowest >= -1e-9, "min " + fmt(lowest));
  });

  guarded("trotter order", [&] {
    const HamiltonianParams p{-2.0, 0.09, 1.0, 0.0, 3, true};
    const ComplexMatrix h = build_hamiltonian(p);
    auto err = [&](double tau) {
      return (trotter_step_unitary(p, tau) - unitary_exp(h, tau)).norm();
    };
    const double ratio = err(0.1) / err(0.05);
    check("trotter order", std::abs(std::log2(ratio) - 3.0) < 0.2, "slope " + fmt(std::log2(ratio)));
  });

  guarded("pulse round trip", [&] {
    NmrSystem sys;
    sys.j_hz = {100.0, 60.0, 50.0};
    double worst = 1.0;
    for (int n = 0; n < 5; ++n) {
      const HamiltonianParams p{4.0 * uni(rng) - 2.0, 0.5 * uni(rng), 4.0 * uni(rng) - 2.0,
                                4.0 * uni(rng) - 2.0, 3, true};
      const double tau = 0.01 + 0.09 * uni(rng);
      const PulsePlan plan = compile_step(p, tau, sys);
      worst = std::min(worst, process_fidelity(simulate_plan(plan, sys), trotter_step_unitary(p, tau)));
    }
    check("pulse round trip", worst >= 1.0 - 1e-6, "min process fidelity " + fmt(worst));
  });

  guarded("parallel sweep", [&] {
    const HamiltonianParams base{-2.0, 0.09, 0.0, 0.0, 3, true};
    const Range r{0.0, 2.0, 5};
    const auto par = phase_grid(base, r, r);
    const auto ser = reference::phase_grid(base, r, r);
    bool same = par.size() == ser.size();
    for (std::size_t i = 0; same && i < par.size(); ++i) {
      same = par[i].energy == ser[i].energy && par[i].gap == ser[i].gap &&
             par[i].phase == ser[i].phase;
    }
    check("parallel sweep", same);
  });

  return all;
}

}  // namespace trispin
