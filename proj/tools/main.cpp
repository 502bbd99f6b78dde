#include <cstdint>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "fround/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"fround: deterministic vehicular beaconing simulator with guard-based "
               "rogue-speed detection"};
  app.require_subcommand(1);

  fround::cli::RunArgs run_args;
  std::uint64_t seed_value = 0;
  auto* run = app.add_subcommand("run", "Run one scenario and write metrics/reports");
  run->add_option("--config", run_args.config_path, "Scenario JSON file")
      ->required();
  auto* seed_opt = run->add_option("--seed", seed_value, "Override the scenario seed");
  run->add_option("--out", run_args.out_dir, "Output directory (default: out)");
  run->add_flag("--emit-events", run_args.emit_events,
                "Also write the full per-delivery event log (large)");
  run->add_flag("--emit-timing", run_args.emit_timing,
                "Include wall-clock processing times in outputs (non-deterministic)");

  fround::cli::SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Run a vehicle-count x rogue-fraction x seed sweep");
  sweep->add_option("--sweep", sweep_args.sweep_path, "Sweep JSON file")->required();
  sweep->add_option("--out", sweep_args.out_dir, "Output directory (default: out)");
  sweep->add_option("--parallel", sweep_args.parallelism,
                    "Concurrent cells (default: host processors)");
  sweep->add_flag("--emit-timing", sweep_args.emit_timing,
                  "Include wall-clock processing times in metrics.csv (non-deterministic)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Validate a scenario file");
  validate->add_option("--config", validate_path, "Scenario JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    if (seed_opt->count() > 0) run_args.seed_override = seed_value;
    return fround::cli::cmd_run(run_args);
  }
  if (sweep->parsed()) {
    return fround::cli::cmd_sweep(sweep_args);
  }
  return fround::cli::cmd_validate(validate_path);
}
