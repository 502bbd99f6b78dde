#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "fround/config.hpp"

namespace test_util {

/// Unique scratch directory under the current working dir, removed on exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::mt19937_64 gen(std::random_device{}());
    path_ = std::filesystem::current_path() /
            ("tmp_" + tag + "_" + std::to_string(gen()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << content;
}

/// Small lossless single-region scenario used across integration tests.
inline fround::ScenarioConfig small_scenario() {
  fround::ScenarioConfig cfg;
  cfg.n_vehicles = 20;
  cfg.tx_range = 5000.0;  // covers the whole 3-mile ring
  cfg.loss_prob = 0.0;
  cfg.duration = 1.0;
  cfg.rogue_fraction = 0.2;
  cfg.seed = 7;
  return cfg;
}

}  // namespace test_util
