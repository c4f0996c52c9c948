// Copyright (c) 2026 the fracvar authors
// SPDX-License-Identifier: MIT

#ifndef FRACVAR_CLI_HPP
#define FRACVAR_CLI_HPP

#include <string>
#include <utility>
#include <vector>

namespace fracvar::cli {

// Fully resolved invocation: defaults, then JSON config file, then flags,
// later sources overriding earlier ones. Everything a command reads lives
// here so summaries can embed the exact configuration. Zero (or empty)
// means "not set": each command substitutes its own default, and the
// summary records the substituted value, never the sentinel.
struct RunConfig {
  std::string command;
  double alpha = 0.5;
  long n = 0;
  double box = 0.0;
  int dim = 0;
  std::string backend = "spectral";
  unsigned long long seed = 1;
  std::string in_path;
  std::string out_prefix = "fracvar_out";
  double lambda = 0.0;
  std::vector<long> frequencies;
  std::vector<double> deltas;
  long trials = 0;
  long threads = 0;  // 0 = FRACVAR_THREADS or hardware
  // Pass/fail thresholds; keys of the versioned defaults table may be
  // overridden per run through the JSON config ("tolerances": {...}).
  std::vector<std::pair<std::string, double>> tolerance_overrides;
};

// Executes one command. Returns 0 on success, 1 when a tolerance check
// fails, 2 on configuration errors. Writes artifacts under out_prefix.
int run(const RunConfig& config);

// Flag/config-file parser wrapping run(); the binary's entry point.
int main(int argc, char** argv);

}  // namespace fracvar::cli

#endif
