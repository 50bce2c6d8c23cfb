// qswap: design and verify selective-SWAP registers for a flying qubit.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/manifest.hpp"

using namespace qswap::cli;

int main(int argc, char** argv) {
  CLI::App app{"Flying-qubit selective SWAP: design, verification and robustness studies"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kToolVersion));

  int code = kExitOk;

  DesignOptions design;
  double kd_a = 0.0, g0 = 0.0;
  std::string windings;
  auto* c_design = app.add_subcommand("design", "Build a register config for SWAP with SQ_target");
  c_design->add_option("--n", design.n_static, "Number of static qubits N")->required();
  c_design->add_option("--target", design.target, "Target qubit nu in 1..N")->required();
  auto* o_kd = c_design->add_option("--kd-a", kd_a, "Optical distance of the target slot");
  auto* o_g0 = c_design->add_option("--g0", g0, "Coupling g0 >= 1; kd_a is taken from its roots");
  o_kd->excludes(o_g0);
  c_design->add_option("--root", design.root, "Root index when entering via --g0 (ascending kd_a)");
  c_design->add_option("--windings", windings, "Comma-separated windings n_i >= 1");
  c_design->add_option("--out", design.out, "Output config JSON (stdout when omitted)");
  c_design->callback([&] {
    if (*o_kd) design.kd_a = kd_a;
    if (*o_g0) design.g0 = g0;
    try {
      if (!windings.empty()) design.windings = parse_int_list(windings);
    } catch (const qswap::InputError& e) {
      std::cerr << "error: " << e.what() << '\n';
      code = kExitInputError;
      return;
    }
    code = cmd_design(design, std::cout, std::cerr);
  });

  VerifyOptions verify;
  auto* c_verify = app.add_subcommand("verify", "Check a config against SWAP(f, SQ_target)");
  c_verify->add_option("--config", verify.config, "Register config JSON")->required();
  c_verify->add_option("--out", verify.out, "JSON report");
  c_verify->callback([&] { code = cmd_verify(verify, std::cout, std::cerr); });

  SweepOptions sweep;
  std::string grid;
  auto* c_sweep = app.add_subcommand("sweep", "Tabulate g_tilde(kd) and h(kd)");
  c_sweep->add_option("--grid", grid, "START:STOP:COUNT")->required();
  c_sweep->add_option("--out", sweep.out, "CSV output (stdout when omitted)");
  c_sweep->callback([&] {
    try {
      sweep.grid = parse_grid(grid);
    } catch (const qswap::InputError& e) {
      std::cerr << "error: " << e.what() << '\n';
      code = kExitInputError;
      return;
    }
    code = cmd_sweep(sweep, std::cout, std::cerr);
  });

  DisorderOptions disorder;
  double sigma_abs = 0.0;
  auto* c_disorder = app.add_subcommand("disorder", "Monte Carlo over Gaussian position noise");
  c_disorder->add_option("--config", disorder.config, "Register config JSON")->required();
  c_disorder->add_option("--sigma-rel", disorder.spec.sigma_rel, "Noise std relative to each kd_i");
  auto* o_abs = c_disorder->add_option("--sigma-abs", sigma_abs, "Absolute noise std (overrides --sigma-rel)");
  c_disorder->add_option("--trials", disorder.spec.trials, "Number of trials")->default_val(1000);
  c_disorder->add_option("--seed", disorder.spec.seed, "Master seed")->default_val(1);
  c_disorder->add_option("--threads", disorder.threads, "Worker threads (0 = all cores)");
  c_disorder->add_option("--out", disorder.out, "Per-trial CSV");
  c_disorder->add_option("--summary", disorder.summary, "Summary JSON (stdout when omitted)");
  c_disorder->callback([&] {
    if (*o_abs) disorder.spec.sigma_abs = sigma_abs;
    code = cmd_disorder(disorder, std::cout, std::cerr);
  });

  WavepacketOptions wave;
  auto* c_wave = app.add_subcommand("wavepacket", "Average fidelity over a Gaussian momentum spread");
  c_wave->add_option("--config", wave.config, "Register config JSON")->required();
  c_wave->add_option("--bandwidth", wave.bandwidth, "Relative momentum std")->required();
  c_wave->add_option("--samples", wave.samples, "Gauss-Hermite nodes")->default_val(32);
  c_wave->add_option("--out", wave.out, "JSON output (stdout when omitted)");
  c_wave->callback([&] { code = cmd_wavepacket(wave, std::cout, std::cerr); });

  ScatterOptions scatter;
  auto* c_scatter = app.add_subcommand("scatter", "Reflection operator of a config at momentum k");
  c_scatter->add_option("--config", scatter.config, "Register config JSON")->required();
  c_scatter->add_option("--k", scatter.k, "Momentum relative to the design momentum")->default_val(1.0);
  c_scatter->add_option("--out", scatter.out, "JSON output (stdout when omitted)");
  c_scatter->callback([&] { code = cmd_scatter(scatter, std::cout, std::cerr); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInputError;
  }
  return code;
}
