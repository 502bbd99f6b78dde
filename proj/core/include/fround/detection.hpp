#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fround/types.hpp"

namespace fround::detection {

/// Latest beacon per sender received by the guard within one detection
/// window. The guard's own beacons are never part of the sample.
struct WindowSample {
  int window_index = 0;
  VehicleId guard = 0;
  std::map<VehicleId, BeaconMessage> latest;

  /// Keeps the newest beacon per sender; drops beacons from the guard.
  void add(const BeaconMessage& msg);
};

/// Component-wise arithmetic mean. Throws EmptyInput.
Position centroid(const std::vector<Position>& positions);

/// Vehicle minimizing Euclidean distance to the centroid; ties broken by
/// smallest id. Throws InsufficientVehicles when fewer than two states.
VehicleId elect_guard(const std::vector<VehicleState>& states);

struct WindowAverages {
  double s_avg = 0.0;
  double rho_avg = 0.0;
};

/// Means of reported speed and carried density over all senders, rogue
/// beacons included. Throws EmptyInput.
WindowAverages window_averages(const WindowSample& sample);

/// Population standard deviation (divisor N) of reported speeds around
/// s_avg, floored at sigma_floor. Throws EmptyInput.
double std_dev(const WindowSample& sample, double s_avg, double sigma_floor);

/// 0 (accept) iff |reported - s_avg| <= k * sigma, else 1 (reject).
/// Expects sigma > 0.
int classify(double reported, double s_avg, double sigma, double k);

/// Runs the averages, deviation, and per-sender test over one window sample.
/// Throws InsufficientVehicles for fewer than two distinct senders.
/// processing_time_us is the measured wall clock of this call.
DetectionReport detect_window(const WindowSample& sample, double sigma_multiplier,
                              double sigma_floor);

/// Per-run confusion counts over vehicles 0..n_vehicles-1: a vehicle counts
/// as flagged if any report ever rejected it. Vehicles that served as guard
/// in any report are excluded.
ConfusionCounts score(const std::vector<DetectionReport>& reports,
                      const std::set<VehicleId>& true_rogues, std::uint32_t n_vehicles);

/// JSON array with one object per window.
std::string reports_to_json(const std::vector<DetectionReport>& reports,
                            bool with_timing = false, int indent = -1);

}  // namespace fround::detection
