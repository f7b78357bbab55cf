#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "trispin/experiment.hpp"

using namespace trispin;

namespace {

ExperimentConfig parse(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in, "test");
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "trispin_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

int cli(const std::string& args) {
  return std::system((std::string(TRISPIN_CLI) + " " + args + " > /dev/null 2>&1").c_str());
}

}  // namespace

TEST(Config, PresetsHoldCaseParameters) {
  const ExperimentConfig a = case_preset(CaseName::A);
  EXPECT_EQ(a.base, (HamiltonianParams{-2.0, 0.09, 0.0, 0.0, 3, true}));
  EXPECT_EQ(a.schedule.control, Knob::J2);
  EXPECT_EQ(a.schedule.c_end, 2.0);
  EXPECT_EQ(a.schedule.steps, 8);
  ASSERT_TRUE(a.decoherence);
  EXPECT_EQ(a.decoherence->t2_eff, 0.150);
  EXPECT_NEAR(a.decoherence->step_duration * 8, 0.146, 1e-15);
  const ExperimentConfig b = case_preset(CaseName::B);
  EXPECT_EQ(b.base, (HamiltonianParams{0.0, 0.12, 0.0, 0.0, 3, true}));
  EXPECT_EQ(b.schedule.control, Knob::J3);
  EXPECT_EQ(b.decoherence->t2_eff, 0.600);
  EXPECT_NEAR(b.decoherence->step_duration * 8, 0.062, 1e-15);
}

TEST(Config, ParsesKeysCommentsAndSections) {
  const ExperimentConfig c = parse(
      "# comment\n"
      "case = A\n"
      "schedule.M = 16   # trailing comment\n"
      "schedule.T=120\n"
      "decoherence.t2_eff = 0.3\n"
      "decoherence.total_duration = 0.2\n"
      "decoherence.reference_steps = 4\n"
      "evolution = trotter\n"
      "schedule.substeps = 3\n"
      "msweep.M_list = 4, 8\n"
      "phasescan.j2 = 0:1:11\n"
      "seed = 42\n");
  EXPECT_EQ(c.name, CaseName::A);
  EXPECT_EQ(c.schedule.steps, 16);
  EXPECT_EQ(c.schedule.total_time, 120.0);
  EXPECT_EQ(c.decoherence->t2_eff, 0.3);
  EXPECT_NEAR(c.decoherence->step_duration, 0.05, 1e-15);
  EXPECT_EQ(c.evolution, Evolution::TrotterSequence);
  EXPECT_EQ(c.schedule.substeps, 3);
  EXPECT_EQ(c.m_list, (std::vector<int>{4, 8}));
  EXPECT_EQ(c.j2_range.samples, 11);
  EXPECT_EQ(c.seed, 42u);
}

TEST(Config, NamedCasesRefuseConflictingOverrides) {
  EXPECT_THROW(parse("case = A\nhamiltonian.omega_x = 0.2\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = B\nschedule.control = J2\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\nschedule.c_end = 3\n"), std::invalid_argument);
  // Restating the case's own value is not a conflict.
  EXPECT_NO_THROW(parse("case = A\nhamiltonian.omega_z = -2\n"));
  const ExperimentConfig c = parse("case = custom\nhamiltonian.omega_x = 0.2\nschedule.c_end = 3\n");
  EXPECT_EQ(c.base.omega_x, 0.2);
  EXPECT_EQ(c.schedule.c_end, 3.0);
}

TEST(Config, RejectsMalformedInput) {
  EXPECT_THROW(parse("schedule.M = 4\n"), std::invalid_argument);  // no case
  EXPECT_THROW(parse("case = C\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\nschedule.M 4\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\nschedule.M = four\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\nschedule.M = 4\nschedule.M = 8\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\nschedule.steps = 4\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\nschedule.M = 0\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\nphasescan.j2 = 0:1\n"), std::invalid_argument);
  EXPECT_THROW(parse("case = A\ndecoherence.step_duration = 0.1\ndecoherence.total_duration = 1\n"),
               std::invalid_argument);
  try {
    parse("case = A\n\nschedule.T = -1\n");
    FAIL() << "expected an error";
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("positive"), std::string::npos);
  }
  EXPECT_THROW(load_config("/nonexistent/trispin.cfg"), std::invalid_argument);
}

TEST(Config, DecoherenceSwitch) {
  EXPECT_FALSE(parse("case = A\ndecoherence.enabled = false\n").decoherence.has_value());
  EXPECT_FALSE(parse("case = custom\ndecoherence.enabled = off\n").decoherence.has_value());
  EXPECT_TRUE(parse("case = B\ndecoherence.enabled = true\n").decoherence.has_value());
  EXPECT_THROW(parse("case = A\ndecoherence.typo = 1\n"), std::invalid_argument);
}

TEST(Config, SampleConfigsLoad) {
  const std::string dir = TRISPIN_CONFIG_DIR;
  EXPECT_EQ(load_config(dir + "/case_a.cfg").base, case_preset(CaseName::A).base);
  const ExperimentConfig a = load_config(dir + "/case_a.cfg");
  EXPECT_NEAR(a.decoherence->step_duration, case_preset(CaseName::A).decoherence->step_duration,
              1e-15);
  EXPECT_EQ(load_config(dir + "/case_b.cfg").schedule.control, Knob::J3);
  const ExperimentConfig n = load_config(dir + "/nmr_synthetic.cfg");
  ASSERT_TRUE(n.nmr);
  EXPECT_EQ(n.nmr->j_hz[0], 100.0);
  EXPECT_EQ(load_config(dir + "/custom_ring.cfg").name, CaseName::Custom);
}

TEST(Experiment, LargestJumpSkipsNaN) {
  ScanTrace t;
  for (int m = 0; m < 4; ++m) {
    ScanRecord r{m, 0.0, 0.5 * m, DensityMatrix::maximally_mixed(2)};
    r.c_xx = m == 2 ? std::nan("") : 0.1 * m * m;
    t.records.push_back(r);
  }
  const TransitionEstimate e = largest_jump(t, &ScanRecord::c_xx);
  EXPECT_EQ(e.step, 1);
  EXPECT_EQ(e.control_lo, 0.0);
  EXPECT_EQ(e.control_hi, 0.5);
  EXPECT_NEAR(e.midpoint(), 0.25, 1e-15);
}

TEST(Experiment, RunSummaryCaseB) {
  const RunResult r = run_case(case_preset(CaseName::B));
  const RunSummary& s = r.summary;
  EXPECT_EQ(s.ghz_frame, LocalFrame::Hadamard);
  EXPECT_LT(s.fidelity_raw, s.fidelity_ideal);
  EXPECT_GT(s.fidelity_rescaled, s.fidelity_raw);
  EXPECT_LT(s.witness_ghz_rescaled, s.witness_ghz);  // rescaling deepens the detection
  EXPECT_TRUE(s.witness_transition_uses_ghz);
  EXPECT_NEAR(s.fidelity_experimental, s.fidelity_raw / r.trace.final_record().purity, 1e-15);
}

TEST(Experiment, CsvLayout) {
  const ExperimentConfig cfg = case_preset(CaseName::A);
  const RunResult r = run_case(cfg);
  std::ostringstream os;
  write_trace_csv(os, cfg, r.trace);
  std::istringstream in(os.str());
  std::string first, second, header;
  std::getline(in, first);
  std::getline(in, second);
  std::getline(in, header);
  EXPECT_EQ(first, "#schema=trispin-run-v1");
  EXPECT_EQ(second.front(), '#');
  EXPECT_EQ(header, "m,t,control,fidelity,purity,C_xx,witness_W,witness_GHZ,energy");
  int rows = 0;
  for (std::string line; std::getline(in, line);) ++rows;
  EXPECT_EQ(rows, cfg.schedule.steps + 1);

  std::ostringstream ms;
  write_msweep_csv(ms, cfg, {{2, 0.5, 0.4}});
  EXPECT_NE(ms.str().find("M,ideal,noisy\n2,0.5,0.4\n"), std::string::npos);
}

TEST(Experiment, PhaseScanDrivers) {
  ExperimentConfig cfg = case_preset(CaseName::A);
  cfg.j2_range = {0.0, 2.0, 3};
  cfg.j3_range = {0.0, 1.0, 2};
  EXPECT_EQ(run_phase_grid(cfg).size(), 6u);
  cfg.phase_knob = Knob::J2;
  const KnobScan scan = run_knob_scan(cfg);
  EXPECT_EQ(scan.points.size(), 3u);
  std::ostringstream os;
  write_knob_scan_csv(os, cfg, scan);
  EXPECT_EQ(os.str().rfind("#schema=trispin-knobscan-v1\n", 0), 0u);
  EXPECT_NE(os.str().find("knob,energy,gap,sector_gap,degeneracy,phase\n"), std::string::npos);
}

TEST(Experiment, CompilePulseNeedsNmr) {
  EXPECT_THROW(run_compile_pulse(case_preset(CaseName::A)), std::invalid_argument);
  const ExperimentConfig n = load_config(std::string(TRISPIN_CONFIG_DIR) + "/nmr_synthetic.cfg");
  const PulsePlan plan = run_compile_pulse(n);
  EXPECT_EQ(plan.target.j2, 1.0);
  EXPECT_EQ(plan.tau, 0.01);
}

TEST(Experiment, SelftestPasses) {
  std::ostringstream os;
  EXPECT_TRUE(run_selftest(7, os)) << os.str();
  EXPECT_EQ(os.str().find("FAIL"), std::string::npos);
}

TEST(Cli, RunIsReproducible) {
  const auto a = scratch("run_a.csv"), b = scratch("run_b.csv");
  ASSERT_EQ(cli("run --case B --seed 5 --out " + a.string()), 0);
  ASSERT_EQ(cli("run --case B --seed 5 --out " + b.string()), 0);
  const std::string ca = slurp(a);
  EXPECT_FALSE(ca.empty());
  EXPECT_EQ(ca, slurp(b));
  EXPECT_EQ(ca.rfind("#schema=", 0), 0u);
}

TEST(Cli, VerbsAndFlags) {
  const std::string dir = TRISPIN_CONFIG_DIR;
  EXPECT_EQ(cli("run --config " + dir + "/case_a.cfg --M 4 --T 100 --no-decoherence "
                "--evolution trotter --out " + scratch("flags.csv").string()),
            0);
  const std::string out = slurp(scratch("flags.csv"));
  EXPECT_NE(out.find("evolution=trotter M=4 T=100 decoherence=off"), std::string::npos);
  EXPECT_EQ(cli("msweep --case A --m-list 2,4 --out " + scratch("ms.csv").string()), 0);
  EXPECT_NE(slurp(scratch("ms.csv")).find("M,ideal,noisy"), std::string::npos);
  EXPECT_EQ(cli("phasescan --case B --knob J3 --j3 0:2:5 --out " + scratch("ps.csv").string()), 0);
  EXPECT_EQ(cli("compile-pulse --config " + dir + "/nmr_synthetic.cfg --out " +
                scratch("pulse.csv").string()),
            0);
  EXPECT_EQ(cli("selftest --seed 3"), 0);
}

TEST(Cli, Errors) {
  EXPECT_NE(cli("run --case C"), 0);
  EXPECT_NE(cli("run --config /nonexistent.cfg"), 0);
  EXPECT_NE(cli("run --case A --out /nonexistent/dir/out.csv"), 0);
  EXPECT_NE(cli("run --case B --config " + std::string(TRISPIN_CONFIG_DIR) + "/case_a.cfg"), 0);
  EXPECT_NE(cli("frobnicate"), 0);
}
