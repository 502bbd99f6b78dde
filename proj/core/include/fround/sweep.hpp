#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "fround/config.hpp"
#include "fround/metrics.hpp"

namespace fround::cli {

/// Cross-product experiment: vehicle_counts x rogue_fractions x seeds over a
/// base scenario.
struct SweepSpec {
  std::vector<std::uint32_t> vehicle_counts;  // default 500..4000 step 500
  std::vector<double> rogue_fractions;        // default 0.00..0.40 step 0.05
  std::vector<std::uint64_t> seeds;           // default: just base.seed
  ScenarioConfig base;
};

SweepSpec default_sweep(const ScenarioConfig& base);
SweepSpec sweep_from_json(std::string_view text);
SweepSpec load_sweep(const std::string& path);

/// One cell of the cross product. config carries the effective per-cell seed;
/// seed keeps the value listed in the spec for reporting.
struct SweepCell {
  std::size_t index = 0;
  std::uint32_t n_vehicles = 0;
  double rogue_fraction = 0.0;
  std::uint64_t seed = 0;
  ScenarioConfig config;
};

/// Listed seed XOR a hash of the cell coordinates, so cells sharing a seed
/// entry still draw independent streams.
std::uint64_t cell_seed(std::uint64_t seed, std::uint32_t n_vehicles, double rogue_fraction);

/// Expands the cross product in (count, fraction, seed) order and validates
/// every derived config. Throws InvalidConfig on the first bad cell.
std::vector<SweepCell> expand(const SweepSpec& spec);

/// Runs all cells, `parallelism` workers at a time (0 = hardware
/// concurrency). Results are indexed by cell regardless of scheduling;
/// on_row, when given, is invoked under a lock as each cell completes.
std::vector<metrics::RunMetrics> run_sweep(
    const SweepSpec& spec, unsigned parallelism,
    const std::function<void(const SweepCell&, const metrics::RunMetrics&)>& on_row = {});

}  // namespace fround::cli
