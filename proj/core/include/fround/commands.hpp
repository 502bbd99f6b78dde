#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace fround::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitIo = 2;

struct RunArgs {
  std::string config_path;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed_override;
  bool emit_events = false;  // also writes events.csv
  bool emit_timing = false;  // adds wall-clock columns/fields to outputs
};

/// Runs one scenario and writes metrics.csv, reports.json and optionally
/// events.csv under out_dir. Returns kExitOk / kExitInvalid / kExitIo.
int cmd_run(const RunArgs& args);

struct SweepArgs {
  std::string sweep_path;
  std::string out_dir = "out";
  unsigned parallelism = 0;  // 0 = hardware concurrency
  bool emit_timing = false;
};

/// Runs a sweep, appending one metrics.csv row per completed cell; the final
/// file is rewritten in cell order, so output does not depend on scheduling.
int cmd_sweep(const SweepArgs& args);

/// Prints the normalized config on success; first violation on failure.
int cmd_validate(const std::string& config_path);

}  // namespace fround::cli
