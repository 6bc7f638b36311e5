#include "cgl/cli.hpp"

#include <CLI11.hpp>

#include <string>
#include <vector>

int main(int argc, char** argv) {
  CLI::App app{"complex Ginzburg-Landau simulation laboratory"};
  app.require_subcommand(1);

  std::string config_path, out_path, out_dir, axis_param, values_csv, csv_path;
  long samples = 1000;
  unsigned long seed = 2026;
  bool inject_fault = false;

  auto* run = app.add_subcommand("run", "integrate one configuration");
  run->add_option("--config", config_path, "config file")->required();
  run->add_option("--out", out_path, "output CSV path");

  auto* sweep = app.add_subcommand("sweep", "one run per axis value");
  sweep->add_option("--config", config_path, "config file")->required();
  sweep->add_option("--axis", axis_param, "mu | epsilon | dt | amplitude")->required();
  sweep->add_option("--values", values_csv, "comma-separated values")->required();
  sweep->add_option("--out-dir", out_dir, "output directory")->required();

  auto* check = app.add_subcommand("check", "run the inequality suite");
  check->add_option("--samples", samples, "samples per law");
  check->add_option("--seed", seed, "RNG seed");
  check->add_option("--csv", csv_path, "also write the report as CSV");
  check->add_flag("--inject-fault", inject_fault,
                  "corrupt the pointwise bound constant (harness sanity)");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cgl::cli::cmd_run(config_path, out_path);

  if (sweep->parsed()) {
    cgl::cli::SweepAxis axis;
    axis.param = axis_param;
    std::string cur;
    for (char c : values_csv + ",") {
      if (c == ',') {
        if (!cur.empty()) axis.values.push_back(std::stod(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    return cgl::cli::cmd_sweep(config_path, axis, out_dir);
  }

  return cgl::cli::cmd_check(samples, seed, inject_fault, csv_path);
}
