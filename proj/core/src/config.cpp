#include "fround/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fround/errors.hpp"

namespace fround {

namespace {

using nlohmann::json;

// Keeps a saturated loss probability strictly below 1 after the density ramp.
constexpr double kMaxEffectiveLoss = 0.999;

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidConfig(msg);
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) throw InvalidConfig("key '" + key + "': expected a number");
  return v.get<double>();
}

std::int64_t get_integer(const json& v, const std::string& key) {
  if (!v.is_number_integer()) throw InvalidConfig("key '" + key + "': expected an integer");
  return v.get<std::int64_t>();
}

std::uint64_t get_unsigned(const json& v, const std::string& key) {
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
    throw InvalidConfig("key '" + key + "': expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

bool get_boolean(const json& v, const std::string& key) {
  if (!v.is_boolean()) throw InvalidConfig("key '" + key + "': expected a boolean");
  return v.get<bool>();
}

ReportedSpeedPolicy policy_from_json(const json& v) {
  if (!v.is_object()) throw InvalidConfig("key 'rogue_policy': expected an object");
  if (!v.contains("type") || !v.at("type").is_string()) {
    throw InvalidConfig("key 'rogue_policy.type': expected a string");
  }
  const std::string type = v.at("type").get<std::string>();
  auto reject_unknown = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : v.items()) {
      if (std::find_if(allowed.begin(), allowed.end(),
                       [&](const char* a) { return key == a; }) == allowed.end()) {
        throw InvalidConfig("unknown key 'rogue_policy." + key + "'");
      }
    }
  };
  if (type == "honest") {
    reject_unknown({"type"});
    return ReportedSpeedPolicy::honest();
  }
  if (type == "sudden_drop") {
    reject_unknown({"type", "target"});
    double target = 10.0;
    if (v.contains("target")) target = get_number(v.at("target"), "rogue_policy.target");
    return ReportedSpeedPolicy::sudden_drop(target);
  }
  if (type == "gradual_drop") {
    reject_unknown({"type", "rate"});
    double rate = 1.0;
    if (v.contains("rate")) rate = get_number(v.at("rate"), "rogue_policy.rate");
    return ReportedSpeedPolicy::gradual_drop(rate);
  }
  throw InvalidConfig("key 'rogue_policy.type': unknown policy '" + type + "'");
}

json policy_to_json(const ReportedSpeedPolicy& p) {
  switch (p.kind) {
    case ReportedSpeedPolicy::Kind::honest:
      return json{{"type", "honest"}};
    case ReportedSpeedPolicy::Kind::sudden_drop:
      return json{{"type", "sudden_drop"}, {"target", p.target_mph}};
    case ReportedSpeedPolicy::Kind::gradual_drop:
      return json{{"type", "gradual_drop"}, {"rate", p.rate_mph_per_s}};
  }
  throw InvalidConfig("rogue_policy: corrupt policy kind");
}

}  // namespace

ValidatedConfig validate_config(const ScenarioConfig& cfg) {
  require(std::isfinite(cfg.road_length) && cfg.road_length > 0.0,
          "road_length must be a positive number of miles");
  require(cfg.lanes >= 1, "lanes must be at least 1");
  require(cfg.n_vehicles >= 2, "n_vehicles must be at least 2 (detection needs two reports)");
  require(std::isfinite(cfg.speed_min) && cfg.speed_min >= 0.0,
          "speed_min must be a non-negative speed in mph");
  require(std::isfinite(cfg.speed_max), "speed_max must be finite");
  require(cfg.speed_min <= cfg.speed_max, "speed_min must not exceed speed_max");
  require(std::isfinite(cfg.rogue_fraction) && cfg.rogue_fraction >= 0.0 &&
              cfg.rogue_fraction <= 1.0,
          "rogue_fraction must lie in [0, 1]");
  require(std::isfinite(cfg.rogue_policy.target_mph) && cfg.rogue_policy.target_mph >= 0.0,
          "rogue_policy.target must be a non-negative speed in mph");
  require(std::isfinite(cfg.rogue_policy.rate_mph_per_s) && cfg.rogue_policy.rate_mph_per_s >= 0.0,
          "rogue_policy.rate must be non-negative mph per second");
  require(cfg.beacon_interval > 0, "beacon_interval must be a positive number of milliseconds");
  require(std::isfinite(cfg.tx_range) && cfg.tx_range > 0.0,
          "tx_range must be a positive number of meters");
  require(std::isfinite(cfg.loss_prob) && cfg.loss_prob >= 0.0 && cfg.loss_prob < 1.0,
          "loss_prob must lie in [0, 1)");
  require(std::isfinite(cfg.loss_prob_per_1000_vehicles) && cfg.loss_prob_per_1000_vehicles >= 0.0,
          "loss_prob_per_1000_vehicles must be non-negative");
  require(std::isfinite(cfg.duration) && cfg.duration >= 0.0,
          "duration must be a non-negative number of seconds");
  require(cfg.detection_window > 0, "detection_window must be a positive number of milliseconds");
  require(cfg.detection_window % cfg.beacon_interval == 0,
          "detection_window must be a multiple of beacon_interval");
  require(std::isfinite(cfg.sigma_multiplier) && cfg.sigma_multiplier > 0.0,
          "sigma_multiplier must be positive");
  require(std::isfinite(cfg.sigma_floor) && cfg.sigma_floor > 0.0,
          "sigma_floor must be a positive speed in mph");
  require(std::isfinite(cfg.honest_noise_sigma) && cfg.honest_noise_sigma >= 0.0,
          "honest_noise_sigma must be non-negative");

  ValidatedConfig v;
  v.scenario = cfg;
  v.road_length_m = cfg.road_length * units::kMetersPerMile;
  v.duration_ms = std::llround(cfg.duration * 1000.0);
  v.n_ticks = v.duration_ms / cfg.beacon_interval;
  v.ticks_per_window = cfg.detection_window / cfg.beacon_interval;
  v.effective_loss_prob =
      std::clamp(cfg.loss_prob + cfg.loss_prob_per_1000_vehicles * (cfg.n_vehicles / 1000.0), 0.0,
                 kMaxEffectiveLoss);
  return v;
}

ScenarioConfig scenario_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("config JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("config JSON root must be an object");

  ScenarioConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "road_length") {
      cfg.road_length = get_number(value, key);
    } else if (key == "lanes") {
      cfg.lanes = static_cast<int>(get_integer(value, key));
    } else if (key == "n_vehicles") {
      cfg.n_vehicles = static_cast<std::uint32_t>(get_unsigned(value, key));
    } else if (key == "speed_min") {
      cfg.speed_min = get_number(value, key);
    } else if (key == "speed_max") {
      cfg.speed_max = get_number(value, key);
    } else if (key == "rogue_fraction") {
      cfg.rogue_fraction = get_number(value, key);
    } else if (key == "rogue_policy") {
      cfg.rogue_policy = policy_from_json(value);
    } else if (key == "beacon_interval") {
      cfg.beacon_interval = get_integer(value, key);
    } else if (key == "tx_range") {
      cfg.tx_range = get_number(value, key);
    } else if (key == "loss_prob") {
      cfg.loss_prob = get_number(value, key);
    } else if (key == "loss_prob_per_1000_vehicles") {
      cfg.loss_prob_per_1000_vehicles = get_number(value, key);
    } else if (key == "duration") {
      cfg.duration = get_number(value, key);
    } else if (key == "detection_window") {
      cfg.detection_window = get_integer(value, key);
    } else if (key == "sigma_multiplier") {
      cfg.sigma_multiplier = get_number(value, key);
    } else if (key == "sigma_floor") {
      cfg.sigma_floor = get_number(value, key);
    } else if (key == "honest_noise_sigma") {
      cfg.honest_noise_sigma = get_number(value, key);
    } else if (key == "guard_reelect_every_window") {
      cfg.guard_reelect_every_window = get_boolean(value, key);
    } else if (key == "seed") {
      cfg.seed = get_unsigned(value, key);
    } else {
      throw InvalidConfig("unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::string scenario_to_json(const ScenarioConfig& cfg, int indent) {
  json j;
  j["road_length"] = cfg.road_length;
  j["lanes"] = cfg.lanes;
  j["n_vehicles"] = cfg.n_vehicles;
  j["speed_min"] = cfg.speed_min;
  j["speed_max"] = cfg.speed_max;
  j["rogue_fraction"] = cfg.rogue_fraction;
  j["rogue_policy"] = policy_to_json(cfg.rogue_policy);
  j["beacon_interval"] = cfg.beacon_interval;
  j["tx_range"] = cfg.tx_range;
  j["loss_prob"] = cfg.loss_prob;
  j["loss_prob_per_1000_vehicles"] = cfg.loss_prob_per_1000_vehicles;
  j["duration"] = cfg.duration;
  j["detection_window"] = cfg.detection_window;
  j["sigma_multiplier"] = cfg.sigma_multiplier;
  j["sigma_floor"] = cfg.sigma_floor;
  j["honest_noise_sigma"] = cfg.honest_noise_sigma;
  j["guard_reelect_every_window"] = cfg.guard_reelect_every_window;
  j["seed"] = cfg.seed;
  return j.dump(indent);
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return scenario_from_json(buf.str());
}

}  // namespace fround
