#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "trispin/experiment.hpp"

namespace {

struct CommonOptions {
  std::string case_name;
  std::string config_path;
  std::optional<int> steps;
  std::optional<double> total_time;
  bool no_decoherence = false;
  std::string evolution;
  std::string out;
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--case", o.case_name, "Named case")->check(CLI::IsMember({"A", "B"}));
  app->add_option("--config", o.config_path, "Config file (key = value)");
  app->add_option("--M", o.steps, "Number of schedule segments")->check(CLI::PositiveNumber);
  app->add_option("--T", o.total_time, "Total model time")->check(CLI::PositiveNumber);
  app->add_flag("--no-decoherence", o.no_decoherence, "Disable relaxation");
  app->add_option("--evolution", o.evolution, "Segment propagator")
      ->check(CLI::IsMember({"trotter", "exact"}));
  app->add_option("--out", o.out, "Output CSV path (default: stdout)");
  app->add_option("--seed", o.seed, "Random seed");
}

trispin::ExperimentConfig build_config(const CommonOptions& o) {
  using namespace trispin;
  ExperimentConfig cfg;
  if (!o.config_path.empty()) {
    cfg = load_config(o.config_path);
    if (!o.case_name.empty() && case_from_string(o.case_name) != cfg.name) {
      throw std::invalid_argument("--case " + o.case_name + " conflicts with case " +
                                  std::string(to_string(cfg.name)) + " in " + o.config_path);
    }
  } else {
    cfg = case_preset(o.case_name.empty() ? CaseName::A : case_from_string(o.case_name));
  }
  if (o.steps) cfg.schedule.steps = *o.steps;
  if (o.total_time) cfg.schedule.total_time = *o.total_time;
  if (o.no_decoherence) cfg.decoherence.reset();
  if (o.evolution == "trotter") cfg.evolution = Evolution::TrotterSequence;
  if (o.evolution == "exact") cfg.evolution = Evolution::ExactSegmentwise;
  if (!o.out.empty()) cfg.output_path = o.out;
  if (o.seed) cfg.seed = *o.seed;
  validate(cfg);
  return cfg;
}

// Writes through `write` to the configured path, or stdout when none is set.
template <typename Write>
bool emit(const trispin::ExperimentConfig& cfg, Write&& write) {
  if (cfg.output_path.empty()) {
    write(std::cout);
    return false;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw std::runtime_error("cannot write '" + cfg.output_path + "'");
  write(file);
  file.close();
  if (!file) throw std::runtime_error("failed writing '" + cfg.output_path + "'");
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace trispin;
  CLI::App app{"Three-spin Ising chain simulator: adiabatic scans, phase maps, pulse plans"};
  app.require_subcommand(1);

  CommonOptions run_o, msweep_o, phase_o, pulse_o, self_o;
  auto* run = app.add_subcommand("run", "Adiabatic scan: per-step CSV and end-of-run summary");
  add_common(run, run_o);

  auto* msweep = app.add_subcommand("msweep", "Minimum fidelity vs number of segments");
  add_common(msweep, msweep_o);
  std::string m_list;
  msweep->add_option("--m-list", m_list, "Comma-separated segment counts");

  auto* phase = app.add_subcommand("phasescan", "Ground-state phase labels and gaps");
  add_common(phase, phase_o);
  std::string knob, j2_range, j3_range;
  phase->add_option("--knob", knob, "Scan one coupling instead of the (J2, J3) grid")
      ->check(CLI::IsMember({"J2", "J3"}));
  phase->add_option("--j2", j2_range, "J2 range lo:hi:samples");
  phase->add_option("--j3", j3_range, "J3 range lo:hi:samples");

  auto* pulse = app.add_subcommand("compile-pulse", "Compile one Trotter step to an NMR schedule");
  add_common(pulse, pulse_o);
  std::optional<double> tau, control;
  pulse->add_option("--tau", tau, "Model time of the step");
  pulse->add_option("--control", control, "Value of the scanned coupling");

  auto* self = app.add_subcommand("selftest", "Internal consistency checks");
  add_common(self, self_o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const ExperimentConfig cfg = build_config(run_o);
      const RunResult result = run_case(cfg);
      const bool to_file =
          emit(cfg, [&](std::ostream& os) { write_trace_csv(os, cfg, result.trace); });
      write_summary(to_file ? std::cout : std::cerr, result.summary);
    } else if (msweep->parsed()) {
      ExperimentConfig cfg = build_config(msweep_o);
      if (!m_list.empty()) {
        cfg.m_list.clear();
        std::istringstream in(m_list);
        for (std::string item; std::getline(in, item, ',');) cfg.m_list.push_back(std::stoi(item));
        validate(cfg);
      }
      const auto rows = run_msweep(cfg);
      emit(cfg, [&](std::ostream& os) { write_msweep_csv(os, cfg, rows); });
    } else if (phase->parsed()) {
      ExperimentConfig cfg = build_config(phase_o);
      if (!j2_range.empty()) cfg.j2_range = parse_range(j2_range);
      if (!j3_range.empty()) cfg.j3_range = parse_range(j3_range);
      if (!knob.empty()) cfg.phase_knob = knob_from_string(knob);
      if (cfg.phase_knob) {
        const KnobScan scan = run_knob_scan(cfg);
        emit(cfg, [&](std::ostream& os) { write_knob_scan_csv(os, cfg, scan); });
      } else {
        const auto grid = run_phase_grid(cfg);
        emit(cfg, [&](std::ostream& os) { write_phase_grid_csv(os, cfg, grid); });
      }
    } else if (pulse->parsed()) {
      ExperimentConfig cfg = build_config(pulse_o);
      if (tau) cfg.pulse_tau = *tau;
      if (control) cfg.pulse_control = *control;
      const PulsePlan plan = run_compile_pulse(cfg);
      const ComplexMatrix target = trotter_step_unitary(plan.target, plan.tau);
      const double f = process_fidelity(simulate_plan(plan, *cfg.nmr), target);
      std::cout << format_listing(plan) << "# process fidelity vs Trotter step: " << f << "\n";
      if (!cfg.output_path.empty()) {
        emit(cfg, [&](std::ostream& os) { os << format_csv(plan); });
      }
    } else if (self->parsed()) {
      const ExperimentConfig cfg = build_config(self_o);
      return run_selftest(cfg.seed, std::cout) ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
