#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace eja {

inline constexpr const char* kToolName = "ejatool";
inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

struct RunConfig {
  std::string command;
  // Empty selects the per-command default (sym:3 for verify, Sym(n) otherwise).
  std::string alg;
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  double atol = 1e-9;
  double rtol = 1e-8;
  std::string out;
  std::string format = "json";
  // prospect
  std::string family = "psd";
  std::size_t n = 2;
  bool zero_diag = false;
  std::size_t refine_steps = 0;
  std::string replay;
  // norm / prospect budget
  std::size_t budget = 100;
  std::string kind = "P_a";
  std::string operand;
  std::string r = "2";
  std::string s = "2";
  unsigned threads = 0;
};

/// Each runner writes human-readable output to `out`, diagnostics to `err`,
/// and returns an ExitCode. Argument problems surface as kExitUsage.
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_repro_example(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_norm(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_prospect(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Parses argv (CLI11) and dispatches to the runner for the subcommand.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace eja
