#include "fround/detection.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "fround/errors.hpp"

namespace fround::detection {

void WindowSample::add(const BeaconMessage& msg) {
  if (msg.sender == guard) return;
  auto [it, inserted] = latest.try_emplace(msg.sender, msg);
  if (!inserted && msg.t_ms >= it->second.t_ms) it->second = msg;
}

Position centroid(const std::vector<Position>& positions) {
  if (positions.empty()) throw EmptyInput("centroid: no positions");
  double sx = 0.0;
  double sy = 0.0;
  for (const auto& p : positions) {
    sx += p.x;
    sy += p.y;
  }
  const double n = static_cast<double>(positions.size());
  return {sx / n, sy / n};
}

VehicleId elect_guard(const std::vector<VehicleState>& states) {
  if (states.size() < 2) {
    throw InsufficientVehicles("elect_guard: need at least two vehicles, got " +
                               std::to_string(states.size()));
  }
  std::vector<Position> positions;
  positions.reserve(states.size());
  for (const auto& s : states) positions.push_back(s.pos);
  const Position center = centroid(positions);

  VehicleId best_id = 0;
  double best_d2 = std::numeric_limits<double>::infinity();
  bool first = true;
  for (const auto& s : states) {
    const double dx = center.x - s.pos.x;
    const double dy = center.y - s.pos.y;
    const double d2 = dx * dx + dy * dy;
    if (first || d2 < best_d2 || (d2 == best_d2 && s.id < best_id)) {
      best_id = s.id;
      best_d2 = d2;
      first = false;
    }
  }
  return best_id;
}

WindowAverages window_averages(const WindowSample& sample) {
  if (sample.latest.empty()) throw EmptyInput("window_averages: empty sample");
  double speed_sum = 0.0;
  double density_sum = 0.0;
  for (const auto& [id, msg] : sample.latest) {
    speed_sum += msg.reported_speed;
    density_sum += msg.density;
  }
  const double n = static_cast<double>(sample.latest.size());
  return {speed_sum / n, density_sum / n};
}

double std_dev(const WindowSample& sample, double s_avg, double sigma_floor) {
  if (sample.latest.empty()) throw EmptyInput("std_dev: empty sample");
  double sq_sum = 0.0;
  for (const auto& [id, msg] : sample.latest) {
    const double d = s_avg - msg.reported_speed;
    sq_sum += d * d;
  }
  const double sigma = std::sqrt(sq_sum / static_cast<double>(sample.latest.size()));
  return std::max(sigma, sigma_floor);
}

int classify(double reported, double s_avg, double sigma, double k) {
  return std::abs(reported - s_avg) <= k * sigma ? 0 : 1;
}

DetectionReport detect_window(const WindowSample& sample, double sigma_multiplier,
                              double sigma_floor) {
  if (sample.latest.size() < 2) {
    throw InsufficientVehicles("detect_window: need at least two distinct senders, got " +
                               std::to_string(sample.latest.size()));
  }
  const auto start = std::chrono::steady_clock::now();

  DetectionReport report;
  report.window_index = sample.window_index;
  report.guard = sample.guard;

  const auto averages = window_averages(sample);
  report.s_avg = averages.s_avg;
  report.rho_avg = averages.rho_avg;
  report.sigma = std_dev(sample, report.s_avg, sigma_floor);

  for (const auto& [id, msg] : sample.latest) {
    const int rlt = classify(msg.reported_speed, report.s_avg, report.sigma, sigma_multiplier);
    report.decisions.emplace(id, rlt == 0 ? Decision::accepted : Decision::rejected);
    if (rlt == 1) report.rogue_ids.push_back(id);
  }

  const auto stop = std::chrono::steady_clock::now();
  report.processing_time_us =
      std::chrono::duration<double, std::micro>(stop - start).count();
  return report;
}

ConfusionCounts score(const std::vector<DetectionReport>& reports,
                      const std::set<VehicleId>& true_rogues, std::uint32_t n_vehicles) {
  std::set<VehicleId> guards;
  std::set<VehicleId> ever_rejected;
  for (const auto& r : reports) {
    guards.insert(r.guard);
    ever_rejected.insert(r.rogue_ids.begin(), r.rogue_ids.end());
  }

  ConfusionCounts c;
  for (VehicleId id = 0; id < n_vehicles; ++id) {
    if (guards.count(id)) continue;
    const bool flagged = ever_rejected.count(id) > 0;
    const bool rogue = true_rogues.count(id) > 0;
    if (flagged && rogue) {
      ++c.tp;
    } else if (flagged && !rogue) {
      ++c.fp;
    } else if (!flagged && rogue) {
      ++c.fn;
    } else {
      ++c.tn;
    }
  }
  return c;
}

std::string reports_to_json(const std::vector<DetectionReport>& reports, bool with_timing,
                            int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : reports) {
    nlohmann::json j;
    j["window_index"] = r.window_index;
    j["guard"] = r.guard;
    j["s_avg_mph"] = r.s_avg;
    j["rho_avg"] = r.rho_avg;
    j["sigma_mph"] = r.sigma;
    nlohmann::json decisions = nlohmann::json::array();
    for (const auto& [id, decision] : r.decisions) {
      decisions.push_back({{"id", id},
                           {"result", decision == Decision::accepted ? "accepted" : "rejected"}});
    }
    j["decisions"] = std::move(decisions);
    j["rogue_ids"] = r.rogue_ids;
    if (with_timing) j["processing_time_us"] = r.processing_time_us;
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

}  // namespace fround::detection
