#include "fround/sweep.hpp"

#include <atomic>
#include <bit>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fround/errors.hpp"
#include "fround/netsim.hpp"
#include "fround/rng.hpp"

namespace fround::cli {

namespace {

using nlohmann::json;

template <typename T>
std::vector<T> list_from_json(const json& v, const std::string& key) {
  if (!v.is_array() || v.empty()) {
    throw InvalidConfig("key '" + key + "': expected a non-empty array");
  }
  std::vector<T> out;
  out.reserve(v.size());
  for (const auto& item : v) {
    if (!item.is_number()) throw InvalidConfig("key '" + key + "': expected numbers");
    out.push_back(item.get<T>());
  }
  return out;
}

}  // namespace

SweepSpec default_sweep(const ScenarioConfig& base) {
  SweepSpec spec;
  for (std::uint32_t n = 500; n <= 4000; n += 500) spec.vehicle_counts.push_back(n);
  for (int i = 0; i <= 8; ++i) spec.rogue_fractions.push_back(i * 0.05);
  spec.seeds.push_back(base.seed);
  spec.base = base;
  return spec;
}

SweepSpec sweep_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidConfig(std::string("sweep JSON: ") + e.what());
  }
  if (!j.is_object()) throw InvalidConfig("sweep JSON root must be an object");

  ScenarioConfig base;
  if (j.contains("base")) base = scenario_from_json(j.at("base").dump());
  SweepSpec spec = default_sweep(base);

  for (const auto& [key, value] : j.items()) {
    if (key == "base") {
      continue;  // parsed above
    } else if (key == "vehicle_counts") {
      spec.vehicle_counts = list_from_json<std::uint32_t>(value, key);
    } else if (key == "rogue_fractions") {
      spec.rogue_fractions = list_from_json<double>(value, key);
    } else if (key == "seeds") {
      spec.seeds = list_from_json<std::uint64_t>(value, key);
    } else {
      throw InvalidConfig("unknown key '" + key + "'");
    }
  }
  return spec;
}

SweepSpec load_sweep(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read sweep file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error while reading '" + path + "'");
  return sweep_from_json(buf.str());
}

std::uint64_t cell_seed(std::uint64_t seed, std::uint32_t n_vehicles, double rogue_fraction) {
  return seed ^ rng::mix(rng::splitmix64(n_vehicles), std::bit_cast<std::uint64_t>(rogue_fraction));
}

std::vector<SweepCell> expand(const SweepSpec& spec) {
  std::vector<SweepCell> cells;
  cells.reserve(spec.vehicle_counts.size() * spec.rogue_fractions.size() * spec.seeds.size());
  for (std::uint32_t n : spec.vehicle_counts) {
    for (double f : spec.rogue_fractions) {
      for (std::uint64_t s : spec.seeds) {
        SweepCell cell;
        cell.index = cells.size();
        cell.n_vehicles = n;
        cell.rogue_fraction = f;
        cell.seed = s;
        cell.config = spec.base;
        cell.config.n_vehicles = n;
        cell.config.rogue_fraction = f;
        cell.config.seed = cell_seed(s, n, f);
        validate_config(cell.config);
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::vector<metrics::RunMetrics> run_sweep(
    const SweepSpec& spec, unsigned parallelism,
    const std::function<void(const SweepCell&, const metrics::RunMetrics&)>& on_row) {
  const auto cells = expand(spec);
  std::vector<metrics::RunMetrics> results(cells.size());

  unsigned workers = parallelism != 0 ? parallelism
                                      : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(cells.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex row_mutex;

  auto work = [&]() {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t idx = next.fetch_add(1);
      if (idx >= cells.size()) return;
      try {
        const auto validated = validate_config(cells[idx].config);
        const auto run_result = netsim::run(validated);
        auto m = metrics::aggregate(run_result, validated);
        m.seed = cells[idx].seed;  // report the listed seed, not the derived one
        results[idx] = m;
        if (on_row) {
          std::lock_guard<std::mutex> lock(row_mutex);
          on_row(cells[idx], m);
        }
      } catch (...) {
        std::lock_guard<std::mutex> lock(row_mutex);
        if (!first_error) first_error = std::current_exception();
        failed.store(true, std::memory_order_relaxed);
        return;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  if (first_error) std::rethrow_exception(first_error);
  return results;
}

}  // namespace fround::cli
