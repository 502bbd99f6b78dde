#include "fround/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "fround/detection.hpp"
#include "fround/errors.hpp"

namespace fround::metrics {

double tpr(const ConfusionCounts& c) {
  const std::uint64_t denom = c.tp + c.fn;
  if (denom == 0) return 1.0;
  return static_cast<double>(c.tp) / static_cast<double>(denom);
}

double fpr(const ConfusionCounts& c) {
  const std::uint64_t denom = c.fp + c.tn;
  if (denom == 0) return 0.0;
  return static_cast<double>(c.fp) / static_cast<double>(denom);
}

double plr(const netsim::ChannelStats& stats) {
  const std::uint64_t attempts = stats.delivered + stats.lost;
  if (attempts == 0) return 0.0;
  return static_cast<double>(stats.lost) / static_cast<double>(attempts);
}

double avg_throughput(const netsim::ChannelStats& stats, double duration_s) {
  if (!(duration_s > 0.0)) throw ZeroDuration("avg_throughput: duration must be positive");
  return static_cast<double>(stats.bytes_delivered) / duration_s;
}

std::uint64_t overhead(const netsim::ChannelStats& stats) { return stats.overhead_bytes; }

namespace {

// log of C(n,k) p^k q^(n-k)
double log_binom_pmf(std::int64_t n, std::int64_t i, double log_p, double log_q) {
  const double nd = static_cast<double>(n);
  const double id = static_cast<double>(i);
  return std::lgamma(nd + 1.0) - std::lgamma(id + 1.0) - std::lgamma(nd - id + 1.0) +
         id * log_p + (nd - id) * log_q;
}

// Streaming log-sum-exp of log_binom_pmf over i in [lo, hi].
double log_sum_pmf(std::int64_t n, std::int64_t lo, std::int64_t hi, double log_p, double log_q) {
  double running_max = -std::numeric_limits<double>::infinity();
  double scaled_sum = 0.0;
  for (std::int64_t i = lo; i <= hi; ++i) {
    const double term = log_binom_pmf(n, i, log_p, log_q);
    if (term > running_max) {
      scaled_sum = scaled_sum * std::exp(running_max - term) + 1.0;
      running_max = term;
    } else {
      scaled_sum += std::exp(term - running_max);
    }
  }
  return running_max + std::log(scaled_sum);
}

}  // namespace

double system_failure_probability(std::int64_t n_vehicles, std::int64_t t_max, double d_f,
                                  std::int64_t k_min_failures) {
  if (std::isnan(d_f) || d_f < 0.0 || d_f > 1.0) {
    throw InvalidProbability("d_f must lie in [0, 1]");
  }
  if (n_vehicles < 0 || t_max < 0) {
    throw InvalidProbability("trial counts must be non-negative");
  }
  if (n_vehicles != 0 && t_max > std::numeric_limits<std::int64_t>::max() / n_vehicles) {
    throw InvalidProbability("trial count n_vehicles * t_max overflows");
  }
  const std::int64_t n = n_vehicles * t_max;

  if (k_min_failures <= 0) return 1.0;  // full sum over the binomial support
  if (k_min_failures > n) return 0.0;

  const double p_fail = 1.0 - d_f;
  if (p_fail == 0.0) return 0.0;
  if (p_fail == 1.0) return 1.0;

  const double log_p = std::log(p_fail);
  const double log_q = std::log(d_f);
  const std::int64_t k = k_min_failures;

  // Sum whichever tail has fewer terms; complement via expm1 keeps precision
  // when the lower tail is tiny.
  double result;
  if (k <= n - k + 1) {
    const double log_lower = log_sum_pmf(n, 0, k - 1, log_p, log_q);
    result = -std::expm1(log_lower);
  } else {
    result = std::exp(log_sum_pmf(n, k, n, log_p, log_q));
  }
  return std::clamp(result, 0.0, 1.0);
}

RunMetrics aggregate(const netsim::RunResult& result, const ValidatedConfig& cfg) {
  RunMetrics m;
  m.n_vehicles = cfg.scenario.n_vehicles;
  m.rogue_fraction = cfg.scenario.rogue_fraction;
  m.seed = cfg.scenario.seed;

  const auto counts =
      detection::score(result.reports, result.true_rogues, cfg.scenario.n_vehicles);
  m.tpr = tpr(counts);
  m.fpr = fpr(counts);
  m.plr = plr(result.stats);
  m.avg_throughput = cfg.scenario.duration > 0.0
                         ? avg_throughput(result.stats, cfg.scenario.duration)
                         : 0.0;
  m.overhead_bytes = overhead(result.stats);

  double total_us = 0.0;
  for (const auto& r : result.reports) total_us += r.processing_time_us;
  m.mean_processing_time_us =
      result.reports.empty() ? 0.0 : total_us / static_cast<double>(result.reports.size());
  return m;
}

namespace {

std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, v);
  return buf;
}

}  // namespace

std::string metrics_csv_header(bool with_timing) {
  std::string h = "n_vehicles,rogue_fraction,seed,tpr,fpr,plr,avg_throughput_bps,overhead_bytes";
  if (with_timing) h += ",mean_processing_time_us";
  return h;
}

std::string metrics_csv_row(const RunMetrics& m, bool with_timing) {
  std::string row = std::to_string(m.n_vehicles);
  row += ',' + fmt_fixed(m.rogue_fraction, 4);
  row += ',' + std::to_string(m.seed);
  row += ',' + fmt_fixed(m.tpr, 6);
  row += ',' + fmt_fixed(m.fpr, 6);
  row += ',' + fmt_fixed(m.plr, 6);
  row += ',' + fmt_fixed(m.avg_throughput, 3);
  row += ',' + std::to_string(m.overhead_bytes);
  if (with_timing) row += ',' + fmt_fixed(m.mean_processing_time_us, 3);
  return row;
}

std::string metrics_to_json(const std::vector<RunMetrics>& rows, bool with_timing, int indent) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : rows) {
    nlohmann::json j;
    j["n_vehicles"] = m.n_vehicles;
    j["rogue_fraction"] = m.rogue_fraction;
    j["seed"] = m.seed;
    j["tpr"] = m.tpr;
    j["fpr"] = m.fpr;
    j["plr"] = m.plr;
    j["avg_throughput_bps"] = m.avg_throughput;
    j["overhead_bytes"] = m.overhead_bytes;
    if (with_timing) j["mean_processing_time_us"] = m.mean_processing_time_us;
    arr.push_back(std::move(j));
  }
  return arr.dump(indent);
}

}  // namespace fround::metrics
