#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fround/config.hpp"
#include "fround/rng.hpp"
#include "fround/types.hpp"

namespace fround::mobility {

/// Classic jam density for a single lane; speed reaches zero here.
inline constexpr double kDefaultJamDensityPerMileLane = 250.0;

/// Gap at or below which a trailing vehicle matches its leader's speed.
inline constexpr double kCarFollowGapM = 10.0;

/// Linear speed-density relation parameters.
struct TrafficParams {
  double s_max = 65.0;                             // mph at zero density
  double rho_max = kDefaultJamDensityPerMileLane;  // vehicles per mile per lane

  static TrafficParams from_config(const ValidatedConfig& cfg) {
    return {cfg.scenario.speed_max, kDefaultJamDensityPerMileLane};
  }
};

/// max(0, s_max * (1 - rho/rho_max)); clamped at zero beyond jam density.
/// Expects rho >= 0.
double greenshield_speed(double rho, const TrafficParams& params);

/// Beacon-count density carried verbatim inside each beacon: the product of
/// vehicle count and per-vehicle beacons per detection window.
double beacon_density(std::uint64_t n_vehicles, std::uint64_t beacons_per_vehicle_per_window);

/// Physical density in vehicles per mile per lane. Expects
/// region_length_miles > 0 and lanes >= 1.
double road_density(std::uint64_t n_in_region, double region_length_miles, int lanes);

/// n_vehicles states with ids 0..N-1: positions uniform over road and lanes,
/// true speeds Greenshield + Gaussian noise clamped to [speed_min, speed_max].
/// Exactly round(rogue_fraction * N) vehicles are flagged rogue, drawn
/// uniformly without replacement and never including the vehicle nearest the
/// position centroid at t=0.
std::vector<VehicleState> spawn(const ValidatedConfig& cfg, rng::StreamSet& rng);

/// Same-lane leader (next vehicle ahead on the ring) and headway for each
/// state. Vehicles alone in their lane have no leader and gap = road length.
struct LeaderInfo {
  std::optional<std::size_t> leader_index;
  double gap_m = 0.0;
};
std::vector<LeaderInfo> leader_gaps(const std::vector<VehicleState>& states, double road_length_m);

/// Advances one time step: speeds are re-sampled as in spawn, a trailing
/// vehicle within kCarFollowGapM of its leader takes the leader's new speed,
/// then positions advance by the new speed and wrap at the road end.
/// Throws InvalidArgument when dt_ms <= 0.
std::vector<VehicleState> step(const std::vector<VehicleState>& states, std::int64_t dt_ms,
                               const ValidatedConfig& cfg, const TrafficParams& params,
                               rng::StreamSet& rng);

/// Speed a vehicle writes into its beacon at time t.
double reported_speed(const VehicleState& state, std::int64_t t_ms);

struct TraceSample {
  std::int64_t t_ms = 0;
  VehicleId id = 0;
  Position pos{};
  double speed_mph = 0.0;

  friend bool operator==(const TraceSample&, const TraceSample&) = default;
};

/// Externally recorded mobility: samples sorted by (t, id), per-vehicle time
/// strictly increasing.
struct TraceTimeline {
  std::vector<TraceSample> samples;

  friend bool operator==(const TraceTimeline&, const TraceTimeline&) = default;
};

inline constexpr std::string_view kTraceCsvHeader = "t_ms,id,x_m,y_m,speed_mph";

/// CSV import/export. Export is canonical: header above, LF line endings,
/// fixed 3-decimal formatting. Import throws ParseError(line, reason) or
/// NonMonotonicTime(id, t).
TraceTimeline trace_from_csv(std::string_view text);
std::string trace_to_csv(const TraceTimeline& timeline);
TraceTimeline import_trace(const std::filesystem::path& path);
void export_trace(const TraceTimeline& timeline, const std::filesystem::path& path);

}  // namespace fround::mobility
