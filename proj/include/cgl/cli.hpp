#pragma once

#include "cgl/config.hpp"

#include <string>
#include <vector>

namespace cgl::cli {

/// Exit codes shared by all subcommands: 0 complete, 1 configuration
/// error, 2 I/O error, 3 blow-up detected.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 1;
inline constexpr int kExitIo = 2;
inline constexpr int kExitBlowup = 3;

/// Runs one simulation and writes the energy-record CSV. The explicit
/// out path wins over the config's out_path.
int cmd_run(const std::string& config_path, const std::string& out_path);

struct SweepAxis {
  std::string param;  // mu | epsilon | dt | amplitude
  std::vector<double> values;
};

/// One run per axis value, executed concurrently (CGL_WORKERS overrides
/// the worker count); per-run CSVs plus a summary CSV of sup-time L2
/// differences between consecutive runs.
int cmd_sweep(const std::string& config_path, const SweepAxis& axis,
              const std::string& out_dir);

/// Runs the inequality suite and prints the Markdown report table.
/// `inject_fault` corrupts the pointwise bound constant to 0.5 to prove
/// the harness can fail. Exit 0 iff every law passes.
int cmd_check(long samples, unsigned long seed, bool inject_fault = false,
              const std::string& csv_path = {});

}  // namespace cgl::cli
