#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fround/config.hpp"
#include "fround/netsim.hpp"
#include "fround/types.hpp"

namespace fround::metrics {

/// Evaluation quantities for one run.
struct RunMetrics {
  double tpr = 0.0;
  double fpr = 0.0;
  double plr = 0.0;
  double avg_throughput = 0.0;  // bytes per second
  std::uint64_t overhead_bytes = 0;
  double mean_processing_time_us = 0.0;
  std::uint32_t n_vehicles = 0;
  double rogue_fraction = 0.0;
  std::uint64_t seed = 0;
};

/// tp / (tp + fn); 1.0 when there were no rogues to detect.
double tpr(const ConfusionCounts& c);

/// fp / (fp + tn); 0.0 when there were no honest vehicles to misjudge.
double fpr(const ConfusionCounts& c);

/// lost / (delivered + lost) over receiver delivery attempts; 0 when none.
double plr(const netsim::ChannelStats& stats);

/// bytes_delivered / duration. Throws ZeroDuration when duration <= 0.
double avg_throughput(const netsim::ChannelStats& stats, double duration_s);

/// Delivered bytes beyond the per-beacon 256-byte base.
std::uint64_t overhead(const netsim::ChannelStats& stats);

/// Tail probability of at least k_min_failures failures among
/// n_vehicles * t_max independent trials that each fail with probability
/// 1 - d_f. k_min_failures <= 0 gives the full sum, exactly 1. Log-space
/// evaluation, usable up to ~10^6 trials. Throws InvalidProbability.
double system_failure_probability(std::int64_t n_vehicles, std::int64_t t_max, double d_f,
                                  std::int64_t k_min_failures);

/// Assembles all run metrics; the seed/n/fraction triple comes from cfg.
RunMetrics aggregate(const netsim::RunResult& result, const ValidatedConfig& cfg);

/// CSV row format, fixed column order:
/// n_vehicles,rogue_fraction,seed,tpr,fpr,plr,avg_throughput_bps,overhead_bytes
/// plus mean_processing_time_us when with_timing is set.
std::string metrics_csv_header(bool with_timing = false);
std::string metrics_csv_row(const RunMetrics& m, bool with_timing = false);

/// JSON array alternative to the CSV.
std::string metrics_to_json(const std::vector<RunMetrics>& rows, bool with_timing = false,
                            int indent = -1);

}  // namespace fround::metrics
