#include "fround/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fround/config.hpp"
#include "fround/detection.hpp"
#include "fround/errors.hpp"
#include "fround/log.hpp"
#include "fround/metrics.hpp"
#include "fround/netsim.hpp"
#include "fround/sweep.hpp"

namespace fround::cli {

namespace {

namespace fs = std::filesystem;

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << content;
  out.flush();
  if (!out) throw IoError("error while writing '" + path.string() + "'");
}

void ensure_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory '" + dir + "': " + ec.message());
}

int report_error_and_exit_code(const char* cmd) {
  try {
    throw;
  } catch (const IoError& e) {
    std::cerr << cmd << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    std::cerr << cmd << ": " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << cmd << ": " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << cmd << ": " << e.what() << "\n";
    return kExitIo;
  }
}

}  // namespace

int cmd_run(const RunArgs& args) {
  try {
    ScenarioConfig cfg = load_scenario(args.config_path);
    if (args.seed_override) cfg.seed = *args.seed_override;
    const ValidatedConfig validated = validate_config(cfg);

    netsim::RunOptions options;
    options.record_events = args.emit_events;
    log::info("run: " + std::to_string(cfg.n_vehicles) + " vehicles, seed " +
              std::to_string(cfg.seed));
    const netsim::RunResult result = netsim::run(validated, options);
    const metrics::RunMetrics m = metrics::aggregate(result, validated);

    ensure_out_dir(args.out_dir);
    const fs::path out_dir(args.out_dir);
    write_text_file(out_dir / "metrics.csv",
                    metrics::metrics_csv_header(args.emit_timing) + "\n" +
                        metrics::metrics_csv_row(m, args.emit_timing) + "\n");
    write_text_file(out_dir / "reports.json",
                    detection::reports_to_json(result.reports, args.emit_timing, 2) + "\n");
    if (args.emit_events) {
      write_text_file(out_dir / "events.csv", netsim::events_to_csv(result.events));
    }
    log::info("run: tpr=" + std::to_string(m.tpr) + " fpr=" + std::to_string(m.fpr) +
              " plr=" + std::to_string(m.plr));
    return kExitOk;
  } catch (...) {
    return report_error_and_exit_code("run");
  }
}

int cmd_sweep(const SweepArgs& args) {
  try {
    const SweepSpec spec = load_sweep(args.sweep_path);
    ensure_out_dir(args.out_dir);
    const fs::path csv_path = fs::path(args.out_dir) / "metrics.csv";

    std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
    if (!csv) throw IoError("cannot write '" + csv_path.string() + "'");
    csv << metrics::metrics_csv_header(args.emit_timing) << "\n";
    csv.flush();

    auto on_row = [&](const SweepCell& cell, const metrics::RunMetrics& m) {
      // Incremental append so partial results survive interruption; the file
      // is rewritten in cell order below once the sweep finishes.
      csv << metrics::metrics_csv_row(m, args.emit_timing) << "\n";
      csv.flush();
      log::info("sweep cell " + std::to_string(cell.index) + ": n=" +
                std::to_string(cell.n_vehicles) + " f=" + std::to_string(cell.rogue_fraction) +
                " seed=" + std::to_string(cell.seed));
    };

    const auto results = run_sweep(spec, args.parallelism, on_row);
    csv.close();

    std::string final_csv = metrics::metrics_csv_header(args.emit_timing) + "\n";
    for (const auto& m : results) final_csv += metrics::metrics_csv_row(m, args.emit_timing) + "\n";
    write_text_file(csv_path, final_csv);
    return kExitOk;
  } catch (...) {
    return report_error_and_exit_code("sweep");
  }
}

int cmd_validate(const std::string& config_path) {
  try {
    const ScenarioConfig cfg = load_scenario(config_path);
    validate_config(cfg);
    std::cout << scenario_to_json(cfg, 2) << "\n";
    return kExitOk;
  } catch (...) {
    return report_error_and_exit_code("validate");
  }
}

}  // namespace fround::cli
