#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "fround/types.hpp"

namespace fround {

/// Full experiment description. Field names double as the JSON keys.
/// Units: road_length miles, tx_range meters, beacon_interval and
/// detection_window milliseconds, duration seconds, speeds mph.
struct ScenarioConfig {
  double road_length = 3.0;
  int lanes = 2;
  std::uint32_t n_vehicles = 500;
  double speed_min = 30.0;
  double speed_max = 65.0;
  double rogue_fraction = 0.0;
  ReportedSpeedPolicy rogue_policy = ReportedSpeedPolicy::sudden_drop(10.0);
  std::int64_t beacon_interval = 100;
  double tx_range = 500.0;
  double loss_prob = 0.0;
  double loss_prob_per_1000_vehicles = 0.0;
  double duration = 10.0;
  std::int64_t detection_window = 1000;
  double sigma_multiplier = 1.0;
  double sigma_floor = 0.1;
  double honest_noise_sigma = 2.0;
  bool guard_reelect_every_window = true;
  std::uint64_t seed = 1;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// A ScenarioConfig that passed validate_config, plus derived quantities.
/// Construct through validate_config only.
struct ValidatedConfig {
  ScenarioConfig scenario;
  double road_length_m = 0.0;
  std::int64_t duration_ms = 0;
  std::int64_t n_ticks = 0;           // beacon ticks over the whole run
  std::int64_t ticks_per_window = 0;  // beacons per vehicle per detection window
  double effective_loss_prob = 0.0;   // loss_prob + density ramp, capped below 1
};

/// Checks every scenario invariant; throws InvalidConfig naming the field.
ValidatedConfig validate_config(const ScenarioConfig& cfg);

/// JSON with snake_case keys; omitted keys take defaults, unknown keys are
/// rejected. Serialization is canonical: all keys, sorted, round-trip exact.
ScenarioConfig scenario_from_json(std::string_view text);
std::string scenario_to_json(const ScenarioConfig& cfg, int indent = -1);

/// Reads and parses a scenario file. IoError if unreadable, InvalidConfig
/// (with parse location) if malformed.
ScenarioConfig load_scenario(const std::string& path);

}  // namespace fround
