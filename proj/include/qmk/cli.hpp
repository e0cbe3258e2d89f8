#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace qmk::cli {

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kValidation = 2,
  kBudgetExceeded = 3,
};

struct Config {
  std::string subcommand;
  std::string points_path;
  std::string measure_path;
  std::string function_path;
  double tolerance = 1e-12;
  double budget = 1e8;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string out_path;  // empty: standard output

  // discrepancy
  std::string method = "exact";
  std::uint64_t trials = 10000;
  // generate
  std::string kind = "halton";
  std::uint64_t n = 128;
  std::uint64_t d = 2;
  // integrate
  bool certify = false;
  // counterexample
  std::uint64_t samples = 101;
};

/// Runs one subcommand and writes its report to `out_path` (or `out`).
/// Diagnostics go to `err`. Returns one of ExitCode.
int run(const Config& config, std::ostream& out, std::ostream& err);

/// Worker threads for exact sweeps: hardware concurrency capped by QMK_THREADS when set.
unsigned thread_cap();

}  // namespace qmk::cli
