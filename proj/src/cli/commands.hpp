#pragma once

// Subcommands of the qswap tool. Each returns a process exit code and
// writes human-readable text to `out` and diagnostics to `err`.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qswap/robustness.hpp"

namespace qswap::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitInputError = 2,
  kExitNumerical = 3,
};

inline constexpr double kVerifyTolerance = 1e-6;

struct DesignOptions {
  int n_static = 1;
  int target = 1;
  std::optional<double> kd_a;
  std::optional<double> g0;
  int root = 0;  // which g0 root (ascending kd_a)
  std::vector<int> windings;
  std::string out;  // empty: config JSON goes to stdout
};

struct VerifyOptions {
  std::string config;
  std::string out;  // optional JSON report
};

struct SweepOptions {
  Grid grid;
  std::string out;  // empty: CSV goes to stdout
};

struct DisorderOptions {
  std::string config;
  DisorderSpec spec;
  unsigned threads = 0;
  std::string out;      // per-trial CSV
  std::string summary;  // summary JSON; stdout when empty
};

struct WavepacketOptions {
  std::string config;
  double bandwidth = 0.0;
  int samples = 32;
  std::string out;
};

struct ScatterOptions {
  std::string config;
  double k = 1.0;
  std::string out;
};

int cmd_design(const DesignOptions& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& opt, std::ostream& out, std::ostream& err);
int cmd_disorder(const DisorderOptions& opt, std::ostream& out, std::ostream& err);
int cmd_wavepacket(const WavepacketOptions& opt, std::ostream& out, std::ostream& err);
int cmd_scatter(const ScatterOptions& opt, std::ostream& out, std::ostream& err);

// "START:STOP:COUNT"; throws InputError.
Grid parse_grid(const std::string& text);
// "1,2,1"; throws InputError.
std::vector<int> parse_int_list(const std::string& text);

}  // namespace qswap::cli
