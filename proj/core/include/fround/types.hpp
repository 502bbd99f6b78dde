#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace fround {

namespace units {
inline constexpr double kMetersPerMile = 1609.344;
inline constexpr double kMphToMps = kMetersPerMile / 3600.0;  // 0.44704
inline constexpr double kLaneWidthM = 3.7;
}  // namespace units

using VehicleId = std::uint32_t;

/// Planar road coordinates: x meters east along the road, y meters north
/// (lane offset). The mobility model keeps 0 <= x <= road length.
struct Position {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Position&, const Position&) = default;
};

inline double distance(const Position& a, const Position& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return std::sqrt(dx * dx + dy * dy);
}

/// How a vehicle fills the speed field of its beacons.
struct ReportedSpeedPolicy {
  enum class Kind { honest, sudden_drop, gradual_drop };

  Kind kind = Kind::honest;
  double target_mph = 10.0;     // sudden_drop: constant reported value
  double rate_mph_per_s = 1.0;  // gradual_drop: decay rate from the true speed

  static ReportedSpeedPolicy honest() { return {}; }
  static ReportedSpeedPolicy sudden_drop(double target) {
    return {Kind::sudden_drop, target, 0.0};
  }
  static ReportedSpeedPolicy gradual_drop(double rate) {
    return {Kind::gradual_drop, 0.0, rate};
  }

  friend bool operator==(const ReportedSpeedPolicy&, const ReportedSpeedPolicy&) = default;
};

/// Ground-truth kinematic and behavioral state of one vehicle.
struct VehicleState {
  VehicleId id = 0;
  Position pos{};
  double true_speed = 0.0;  // mph
  int lane = 0;
  bool is_rogue = false;
  ReportedSpeedPolicy policy{};

  friend bool operator==(const VehicleState&, const VehicleState&) = default;
};

inline constexpr std::uint32_t kBeaconBaseBytes = 256;
inline constexpr std::uint32_t kRogueListEntryBytes = 8;  // 4-byte id + 4-byte framing

inline std::uint32_t beacon_size_bytes(std::size_t rogue_list_len) {
  return kBeaconBaseBytes + kRogueListEntryBytes * static_cast<std::uint32_t>(rogue_list_len);
}

/// Periodic broadcast carrying reported kinematics plus the density figure.
/// A guard appends its latest detection result as rogue_list + rlt_flag;
/// only the list entries grow the message beyond the 256-byte base.
struct BeaconMessage {
  VehicleId sender = 0;
  std::int64_t t_ms = 0;  // multiple of the beacon interval
  double reported_speed = 0.0;  // mph
  Position pos{};
  double density = 0.0;  // beacon-count density, carried verbatim
  double accel = 0.0;    // mph/s
  bool braking = false;
  double gap_m = 0.0;  // headway to the same-lane leader
  std::optional<std::vector<VehicleId>> rogue_list;
  std::optional<int> rlt_flag;
  std::uint32_t size_bytes = kBeaconBaseBytes;
};

enum class Decision { accepted, rejected };

/// Per-window guard output. rogue_ids lists exactly the rejected keys of
/// decisions, ascending; the guard itself is never judged.
struct DetectionReport {
  int window_index = 0;
  VehicleId guard = 0;
  double s_avg = 0.0;    // mph
  double rho_avg = 0.0;  // same units as the carried density
  double sigma = 0.0;    // mph
  std::map<VehicleId, Decision> decisions;
  std::vector<VehicleId> rogue_ids;
  double processing_time_us = 0.0;
};

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;
};

}  // namespace fround
