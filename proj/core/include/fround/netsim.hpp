#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "fround/config.hpp"
#include "fround/detection.hpp"
#include "fround/rng.hpp"
#include "fround/types.hpp"

namespace fround::netsim {

/// Aggregate channel counters; candidates = delivered + lost.
struct ChannelStats {
  std::uint64_t sent = 0;       // broadcast events
  std::uint64_t delivered = 0;  // per-receiver deliveries
  std::uint64_t lost = 0;       // per-receiver losses
  std::uint64_t bytes_delivered = 0;
  std::uint64_t overhead_bytes = 0;  // delivered bytes beyond the 256-byte base
};

/// One candidate delivery, with the loggable projection of the beacon.
struct EventRecord {
  std::int64_t t_ms = 0;
  VehicleId sender = 0;
  VehicleId receiver = 0;
  bool delivered = false;
  double reported_speed = 0.0;
  std::uint32_t size_bytes = 0;
};

/// Ordered by (t, sender, receiver).
using EventLog = std::vector<EventRecord>;

/// CSV with header t_ms,sender,receiver,delivered,reported_speed_mph,bytes.
std::string events_to_csv(const EventLog& log);

/// Euclidean distance at most tx_range_m (closed boundary).
bool in_range(const Position& a, const Position& b, double tx_range_m);

/// Delivers msg to every other vehicle within range, each independently with
/// probability 1 - loss_prob. Updates stats; appends one record per candidate
/// to log when given. Returns the receiver ids that got the message,
/// ascending.
std::vector<VehicleId> broadcast(const VehicleState& sender, const BeaconMessage& msg,
                                 const std::vector<VehicleState>& all_states, double tx_range_m,
                                 double loss_prob, rng::StreamSet& rng, ChannelStats& stats,
                                 EventLog* log = nullptr);

struct RunOptions {
  /// Event logs grow as vehicles^2 x ticks; keep off except for small runs.
  bool record_events = false;
};

struct RunResult {
  EventLog events;  // empty unless RunOptions::record_events
  ChannelStats stats;
  std::vector<DetectionReport> reports;  // one per completed detection window
  std::set<VehicleId> true_rogues;       // ground truth from spawn
};

/// Full discrete-event run: every beacon interval each vehicle broadcasts
/// (rogues apply their reporting policy); at each detection-window boundary
/// the guard is (re-)elected from current positions and the completed
/// window's sample is tested; the detecting guard's next beacon carries the
/// rogue list, and vehicles that received a list ignore subsequent beacons
/// from the listed senders. Propagates InsufficientVehicles when a guard saw
/// fewer than two distinct senders in a completed window.
RunResult run(const ValidatedConfig& cfg, const RunOptions& options = {});

}  // namespace fround::netsim
