#include "fround/mobility.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "fround/detection.hpp"
#include "fround/errors.hpp"

namespace fround::mobility {

double greenshield_speed(double rho, const TrafficParams& params) {
  return std::max(0.0, params.s_max * (1.0 - rho / params.rho_max));
}

double beacon_density(std::uint64_t n_vehicles, std::uint64_t beacons_per_vehicle_per_window) {
  return static_cast<double>(n_vehicles) * static_cast<double>(beacons_per_vehicle_per_window);
}

double road_density(std::uint64_t n_in_region, double region_length_miles, int lanes) {
  return static_cast<double>(n_in_region) / (region_length_miles * static_cast<double>(lanes));
}

namespace {

double sample_true_speed(const ValidatedConfig& cfg, const TrafficParams& params,
                         rng::Stream& noise) {
  const double base = greenshield_speed(
      road_density(cfg.scenario.n_vehicles, cfg.scenario.road_length, cfg.scenario.lanes), params);
  const double v = base + noise.next_normal(0.0, cfg.scenario.honest_noise_sigma);
  return std::clamp(v, cfg.scenario.speed_min, cfg.scenario.speed_max);
}

}  // namespace

std::vector<VehicleState> spawn(const ValidatedConfig& cfg, rng::StreamSet& rng) {
  const auto params = TrafficParams::from_config(cfg);
  const std::uint32_t n = cfg.scenario.n_vehicles;

  std::vector<VehicleState> states;
  states.reserve(n);
  for (VehicleId id = 0; id < n; ++id) {
    auto& place = rng.get(rng::Purpose::spawn_state, id);
    const double x = place.next_unit() * cfg.road_length_m;
    const int lane = static_cast<int>(place.next_below(static_cast<std::uint64_t>(cfg.scenario.lanes)));
    VehicleState s;
    s.id = id;
    s.pos = {x, lane * units::kLaneWidthM};
    s.lane = lane;
    s.true_speed = sample_true_speed(cfg, params, rng.get(rng::Purpose::speed_noise, id));
    states.push_back(s);
  }

  // The vehicle nearest the centroid is the trusted t=0 guard; it can never
  // be drawn as a rogue.
  std::uint64_t n_rogues =
      static_cast<std::uint64_t>(std::llround(cfg.scenario.rogue_fraction * n));
  n_rogues = std::min<std::uint64_t>(n_rogues, n - 1);
  if (n_rogues > 0) {
    const VehicleId guard0 = detection::elect_guard(states);
    std::vector<VehicleId> pool;
    pool.reserve(n - 1);
    for (VehicleId id = 0; id < n; ++id) {
      if (id != guard0) pool.push_back(id);
    }
    auto& pick = rng.get(rng::Purpose::rogue_select, 0);
    for (std::uint64_t i = 0; i < n_rogues; ++i) {
      const std::uint64_t j = i + pick.next_below(pool.size() - i);
      std::swap(pool[i], pool[j]);
      states[pool[i]].is_rogue = true;
      states[pool[i]].policy = cfg.scenario.rogue_policy;
    }
  }
  return states;
}

std::vector<LeaderInfo> leader_gaps(const std::vector<VehicleState>& states,
                                    double road_length_m) {
  std::vector<LeaderInfo> out(states.size());
  // Indices per lane, ordered by (x, id) along the ring.
  std::unordered_map<int, std::vector<std::size_t>> lanes;
  for (std::size_t i = 0; i < states.size(); ++i) lanes[states[i].lane].push_back(i);
  for (auto& [lane, members] : lanes) {
    std::sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      if (states[a].pos.x != states[b].pos.x) return states[a].pos.x < states[b].pos.x;
      return states[a].id < states[b].id;
    });
    const std::size_t m = members.size();
    for (std::size_t k = 0; k < m; ++k) {
      const std::size_t self = members[k];
      if (m == 1) {
        out[self] = {std::nullopt, road_length_m};
        continue;
      }
      const std::size_t leader = members[(k + 1) % m];
      double gap = states[leader].pos.x - states[self].pos.x;
      if (gap <= 0.0) gap += road_length_m;  // wrapped around the ring
      out[self] = {leader, gap};
    }
  }
  return out;
}

std::vector<VehicleState> step(const std::vector<VehicleState>& states, std::int64_t dt_ms,
                               const ValidatedConfig& cfg, const TrafficParams& params,
                               rng::StreamSet& rng) {
  if (dt_ms <= 0) throw InvalidArgument("step: dt must be a positive number of milliseconds");

  std::vector<double> resampled(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    resampled[i] = sample_true_speed(cfg, params, rng.get(rng::Purpose::speed_noise, states[i].id));
  }

  const auto leaders = leader_gaps(states, cfg.road_length_m);
  const double dt_s = static_cast<double>(dt_ms) / 1000.0;

  std::vector<VehicleState> next = states;
  for (std::size_t i = 0; i < states.size(); ++i) {
    double v = resampled[i];
    if (leaders[i].leader_index && leaders[i].gap_m <= kCarFollowGapM) {
      v = resampled[*leaders[i].leader_index];
    }
    next[i].true_speed = v;
    double x = std::fmod(states[i].pos.x + v * units::kMphToMps * dt_s, cfg.road_length_m);
    if (x < 0.0) x += cfg.road_length_m;
    next[i].pos.x = x;
  }
  return next;
}

double reported_speed(const VehicleState& state, std::int64_t t_ms) {
  switch (state.policy.kind) {
    case ReportedSpeedPolicy::Kind::honest:
      return state.true_speed;
    case ReportedSpeedPolicy::Kind::sudden_drop:
      return state.policy.target_mph;
    case ReportedSpeedPolicy::Kind::gradual_drop:
      return std::max(0.0, state.true_speed -
                               state.policy.rate_mph_per_s * static_cast<double>(t_ms) / 1000.0);
  }
  return state.true_speed;
}

namespace {

std::string_view strip_cr(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return line;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no, const char* what) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) {
    throw ParseError(line_no, std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

TraceTimeline trace_from_csv(std::string_view text) {
  TraceTimeline timeline;
  if (text.empty()) return timeline;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  std::unordered_map<VehicleId, std::int64_t> last_t;
  bool saw_header = false;

  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = strip_cr(
        text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos));
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;
    if (line.empty()) continue;

    if (!saw_header) {
      if (line != kTraceCsvHeader) {
        throw ParseError(line_no, "expected header '" + std::string(kTraceCsvHeader) + "'");
      }
      saw_header = true;
      continue;
    }

    std::array<std::string_view, 5> fields;
    std::size_t start = 0;
    std::size_t n_fields = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
      if (i == line.size() || line[i] == ',') {
        if (n_fields == fields.size()) throw ParseError(line_no, "expected 5 fields");
        fields[n_fields++] = line.substr(start, i - start);
        start = i + 1;
      }
    }
    if (n_fields != fields.size()) throw ParseError(line_no, "expected 5 fields");

    TraceSample s;
    s.t_ms = parse_field<std::int64_t>(fields[0], line_no, "t_ms");
    s.id = parse_field<VehicleId>(fields[1], line_no, "id");
    s.pos.x = parse_field<double>(fields[2], line_no, "x_m");
    s.pos.y = parse_field<double>(fields[3], line_no, "y_m");
    s.speed_mph = parse_field<double>(fields[4], line_no, "speed_mph");

    auto it = last_t.find(s.id);
    if (it != last_t.end() && s.t_ms <= it->second) throw NonMonotonicTime(s.id, s.t_ms);
    last_t[s.id] = s.t_ms;
    timeline.samples.push_back(s);
  }

  std::stable_sort(timeline.samples.begin(), timeline.samples.end(),
                   [](const TraceSample& a, const TraceSample& b) {
                     if (a.t_ms != b.t_ms) return a.t_ms < b.t_ms;
                     return a.id < b.id;
                   });
  return timeline;
}

std::string trace_to_csv(const TraceTimeline& timeline) {
  std::string out{kTraceCsvHeader};
  out.push_back('\n');
  char buf[128];
  for (const auto& s : timeline.samples) {
    std::snprintf(buf, sizeof(buf), "%lld,%u,%.3f,%.3f,%.3f\n", static_cast<long long>(s.t_ms),
                  s.id, s.pos.x, s.pos.y, s.speed_mph);
    out += buf;
  }
  return out;
}

TraceTimeline import_trace(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read trace file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path.string() + "'");
  return trace_from_csv(buf.str());
}

void export_trace(const TraceTimeline& timeline, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write trace file '" + path.string() + "'");
  out << trace_to_csv(timeline);
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

}  // namespace fround::mobility
