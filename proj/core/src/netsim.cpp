#include "fround/netsim.hpp"

#include <algorithm>
#include <cstdio>
#include <optional>
#include <utility>

#include "fround/errors.hpp"
#include "fround/mobility.hpp"

namespace fround::netsim {

std::string events_to_csv(const EventLog& log) {
  std::string out = "t_ms,sender,receiver,delivered,reported_speed_mph,bytes\n";
  char buf[128];
  for (const auto& e : log) {
    std::snprintf(buf, sizeof(buf), "%lld,%u,%u,%d,%.3f,%u\n", static_cast<long long>(e.t_ms),
                  e.sender, e.receiver, e.delivered ? 1 : 0, e.reported_speed, e.size_bytes);
    out += buf;
  }
  return out;
}

bool in_range(const Position& a, const Position& b, double tx_range_m) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  return dx * dx + dy * dy <= tx_range_m * tx_range_m;
}

std::vector<VehicleId> broadcast(const VehicleState& sender, const BeaconMessage& msg,
                                 const std::vector<VehicleState>& all_states, double tx_range_m,
                                 double loss_prob, rng::StreamSet& rng, ChannelStats& stats,
                                 EventLog* log) {
  stats.sent += 1;
  std::vector<VehicleId> received;
  for (const auto& r : all_states) {
    if (r.id == sender.id) continue;
    if (!in_range(sender.pos, r.pos, tx_range_m)) continue;
    const bool ok = !rng.get(rng::Purpose::channel_loss, r.id).next_bernoulli(loss_prob);
    if (log) {
      log->push_back({msg.t_ms, sender.id, r.id, ok, msg.reported_speed, msg.size_bytes});
    }
    if (ok) {
      received.push_back(r.id);
      stats.delivered += 1;
      stats.bytes_delivered += msg.size_bytes;
      stats.overhead_bytes += msg.size_bytes - kBeaconBaseBytes;
    } else {
      stats.lost += 1;
    }
  }
  return received;
}

RunResult run(const ValidatedConfig& cfg, const RunOptions& options) {
  const auto& sc = cfg.scenario;
  rng::StreamSet rng(sc.seed);
  const auto params = mobility::TrafficParams::from_config(cfg);

  auto states = mobility::spawn(cfg, rng);

  RunResult out;
  for (const auto& s : states) {
    if (s.is_rogue) out.true_rogues.insert(s.id);
  }
  if (cfg.n_ticks == 0) return out;

  const double carried_density =
      mobility::beacon_density(sc.n_vehicles, static_cast<std::uint64_t>(cfg.ticks_per_window));
  const double dt_s = static_cast<double>(sc.beacon_interval) / 1000.0;

  VehicleId guard = 0;
  bool have_guard = false;
  detection::WindowSample sample;

  // Detection output waiting to ride on the detecting guard's next beacon.
  struct PendingRogueList {
    VehicleId announcer;
    std::vector<VehicleId> ids;
  };
  std::optional<PendingRogueList> pending;

  // Per-vehicle blacklist of senders to ignore, lazily allocated.
  std::vector<std::vector<bool>> ignore(sc.n_vehicles);
  auto mark_ignored = [&](VehicleId receiver, const std::vector<VehicleId>& ids) {
    auto& flags = ignore[receiver];
    if (flags.empty()) flags.assign(sc.n_vehicles, false);
    for (VehicleId id : ids) flags[id] = true;
  };
  auto is_ignored = [&](VehicleId receiver, VehicleId snd) {
    return !ignore[receiver].empty() && ignore[receiver][snd];
  };

  auto finalize_window = [&](int window_index) {
    auto report = detection::detect_window(sample, sc.sigma_multiplier, sc.sigma_floor);
    pending = PendingRogueList{sample.guard, report.rogue_ids};
    mark_ignored(sample.guard, report.rogue_ids);
    out.reports.push_back(std::move(report));
    (void)window_index;
  };

  std::vector<double> prev_speed(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) prev_speed[i] = states[i].true_speed;

  for (std::int64_t tick = 0; tick < cfg.n_ticks; ++tick) {
    const std::int64_t t = tick * sc.beacon_interval;

    if (t % sc.detection_window == 0) {
      if (tick > 0) finalize_window(static_cast<int>(t / sc.detection_window) - 1);
      if (!have_guard || sc.guard_reelect_every_window) {
        guard = detection::elect_guard(states);
        have_guard = true;
      }
      sample = detection::WindowSample{static_cast<int>(t / sc.detection_window), guard, {}};
    }

    const auto leaders = mobility::leader_gaps(states, cfg.road_length_m);
    for (std::size_t i = 0; i < states.size(); ++i) {
      const auto& s = states[i];
      BeaconMessage msg;
      msg.sender = s.id;
      msg.t_ms = t;
      msg.reported_speed = mobility::reported_speed(s, t);
      msg.pos = s.pos;
      msg.density = carried_density;
      msg.accel = tick == 0 ? 0.0 : (s.true_speed - prev_speed[i]) / dt_s;
      msg.braking = msg.accel < 0.0;
      msg.gap_m = leaders[i].gap_m;
      if (pending && pending->announcer == s.id) {
        msg.rogue_list = pending->ids;
        msg.rlt_flag = pending->ids.empty() ? 0 : 1;
        pending.reset();
      }
      msg.size_bytes = beacon_size_bytes(msg.rogue_list ? msg.rogue_list->size() : 0);

      const auto received = broadcast(s, msg, states, sc.tx_range, cfg.effective_loss_prob, rng,
                                      out.stats, options.record_events ? &out.events : nullptr);
      if (msg.rogue_list) {
        for (VehicleId r : received) mark_ignored(r, *msg.rogue_list);
      }
      if (s.id != guard && !is_ignored(guard, s.id) &&
          std::binary_search(received.begin(), received.end(), guard)) {
        sample.add(msg);
      }
    }

    for (std::size_t i = 0; i < states.size(); ++i) prev_speed[i] = states[i].true_speed;
    states = mobility::step(states, sc.beacon_interval, cfg, params, rng);
  }

  const std::int64_t t_end = cfg.n_ticks * sc.beacon_interval;
  if (t_end % sc.detection_window == 0 && t_end >= sc.detection_window) {
    finalize_window(static_cast<int>(t_end / sc.detection_window) - 1);
  }
  return out;
}

}  // namespace fround::netsim
