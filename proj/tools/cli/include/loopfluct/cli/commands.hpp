#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "loopfluct/mcmc.hpp"
#include "loopfluct/observables.hpp"
#include "loopfluct/verify.hpp"

namespace loopfluct::cli {

std::string tool_version();

/// Worker count: LOOPFLUCT_THREADS if set and positive, else the hardware concurrency,
/// never more than `jobs`.
unsigned worker_count(std::size_t jobs);

/// Runs task(0) .. task(count - 1) on a bounded pool. The first exception is rethrown
/// after all workers stop.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& task);

struct SampleOptions {
  double T = 1.0;
  std::int64_t n = 1024;
  std::int64_t count = 1;
  std::uint64_t seed = 1;
  std::filesystem::path out = "loops";
};

/// Writes loop_<k>.bin and loop_<k>.csv for k < count (stream k). Returns files written.
std::vector<std::filesystem::path> cmd_sample(const SampleOptions& opts);

struct ChainJob {
  ChainConfig config;
  RunOptions run;
  std::uint64_t seed = 1;
  std::uint64_t stream_id = 0;

  /// Reads T, n, h, area_target, safety_margin, init_inflation, max_cells, sweeps,
  /// burn_in, thin, pilot_sweeps, seed, stream_id; missing fields take defaults derived
  /// from T (n = 32 T, h = T/256).
  static ChainJob from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

struct ChainResult {
  ChainSummary summary;
  std::vector<ObservableRecord> records;
};

/// Runs the chain, measuring every emitted loop. If `loops_out` is non-null the emitted
/// loops are appended to it as binary dumps.
ChainResult run_chain_job(const ChainJob& job, std::ostream* loops_out = nullptr);

/// Writes loops.bin, observables.csv and summary.json into `out`.
ChainResult cmd_chain(const ChainJob& job, const std::filesystem::path& out);

struct StudyConfig {
  std::vector<double> T_list{16.0, 32.0, 64.0, 128.0};
  double n_per_T = 32.0;     // n = n_per_T * T before rounding up to a multiple of m
  double h_divisor = 256.0;  // h = T / h_divisor
  int chains_per_T = 8;
  std::int64_t sweeps = 100;
  std::int64_t burn_in = -1;
  std::int64_t thin = 4;
  std::int64_t pilot_sweeps = 100;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = "study";

  static StudyConfig from_json(const nlohmann::json& j);
  nlohmann::ordered_json to_json() const;
};

/// round(T^(1/3)), at least 1.
int study_m(double T);
/// n_per_T * T rounded up to the next multiple of study_m(T).
std::int64_t study_n(const StudyConfig& cfg, double T);

struct StudyResult {
  std::vector<ObservableRecord> records;  // sorted by (T, stream_id, sweep)
  std::vector<ChainSummary> summaries;
  /// Observable name -> fit; empty when fewer than three T values were run.
  std::vector<std::pair<std::string, ScalingFit>> fits;
  std::string fit_error;
};

/// Fits over per-chain means of each observable.
std::vector<std::pair<std::string, ScalingFit>> fit_observables(
    const std::vector<ObservableRecord>& records);

/// Runs every chain, merges, fits and writes observables.csv, summaries.jsonl, fits.json
/// and scaling.svg into cfg.out_dir (which is created).
StudyResult cmd_study(const StudyConfig& cfg);
/// Same without touching the file system.
StudyResult run_study(const StudyConfig& cfg);

/// Writes one JSON line per report; returns 0 iff every report passed.
int cmd_verify(const std::string& selector, std::uint64_t seed, std::ostream& out);

/// Log-log scatter of the fit points with fitted lines.
std::string scaling_svg(const std::vector<std::pair<std::string, ScalingFit>>& fits);

}  // namespace loopfluct::cli
