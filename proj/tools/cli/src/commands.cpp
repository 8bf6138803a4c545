#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "loopfluct/cli/commands.hpp"
#include "loopfluct/loop_io.hpp"

namespace loopfluct::cli {

namespace fs = std::filesystem;

std::string tool_version() { return std::string("loopfluct ") + LOOPFLUCT_VERSION; }

namespace {

std::ofstream open_out(const fs::path& p, bool binary = false) {
  std::ofstream os(p, binary ? std::ios::binary : std::ios::out);
  if (!os) fail(ErrorCode::Io, "cannot open '" + p.string() + "' for writing");
  return os;
}

void check_written(std::ostream& os, const fs::path& p) {
  os.flush();
  if (!os) fail(ErrorCode::Io, "write to '" + p.string() + "' failed");
}

template <class T>
T get_or(const nlohmann::json& j, const char* key, T fallback) {
  return j.contains(key) ? j.at(key).get<T>() : fallback;
}

}  // namespace

std::vector<fs::path> cmd_sample(const SampleOptions& opts) {
  require(opts.count >= 0, "sample: count must be non-negative");
  std::vector<fs::path> written;
  if (opts.count == 0) return written;
  const TimeGrid grid(opts.T, opts.n);
  fs::create_directories(opts.out);
  nlohmann::ordered_json cfg;
  cfg["command"] = "sample";
  cfg["T"] = opts.T;
  cfg["n"] = opts.n;
  cfg["count"] = opts.count;
  cfg["seed"] = opts.seed;
  for (std::int64_t k = 0; k < opts.count; ++k) {
    RngStream rng(opts.seed, static_cast<std::uint64_t>(k));
    const LoopPath loop = sample_loop(grid, rng);
    const LoopMeta meta{opts.seed, static_cast<std::uint64_t>(k), LOOPFLUCT_VERSION, cfg.dump()};
    char stem[32];
    std::snprintf(stem, sizeof stem, "loop_%06lld", static_cast<long long>(k));
    const fs::path bin = opts.out / (std::string(stem) + ".bin");
    const fs::path csv = opts.out / (std::string(stem) + ".csv");
    {
      std::ofstream os = open_out(bin, true);
      write_loop_binary(os, loop, meta);
      check_written(os, bin);
    }
    {
      std::ofstream os = open_out(csv);
      write_loop_csv(os, loop, meta);
      check_written(os, csv);
    }
    written.push_back(bin);
    written.push_back(csv);
  }
  return written;
}

ChainJob ChainJob::from_json(const nlohmann::json& j) {
  ChainJob job;
  const double T = get_or(j, "T", 8.0);
  const auto n = get_or<std::int64_t>(j, "n", static_cast<std::int64_t>(std::llround(32.0 * T)));
  job.config = ChainConfig::for_time(T, n);
  if (j.contains("h")) {
    job.config.h = j.at("h").get<double>();
    job.config.safety_margin = 6.0 * job.config.h * std::numbers::pi * T;
  }
  job.config.area_target = get_or(j, "area_target", job.config.area_target);
  job.config.safety_margin = get_or(j, "safety_margin", job.config.safety_margin);
  job.config.init_inflation = get_or(j, "init_inflation", job.config.init_inflation);
  job.config.max_cells = get_or(j, "max_cells", job.config.max_cells);
  job.run.sweeps = get_or(j, "sweeps", job.run.sweeps);
  job.run.burn_in = get_or(j, "burn_in", job.run.burn_in);
  job.run.thin = get_or(j, "thin", job.run.thin);
  job.run.pilot_sweeps = get_or(j, "pilot_sweeps", job.run.pilot_sweeps);
  job.seed = get_or(j, "seed", job.seed);
  job.stream_id = get_or(j, "stream_id", job.stream_id);
  job.config.validate();
  return job;
}

nlohmann::ordered_json ChainJob::to_json() const {
  nlohmann::ordered_json j = nlohmann::ordered_json::parse(config.to_json());
  j["sweeps"] = run.sweeps;
  j["burn_in"] = run.burn_in;
  j["thin"] = run.thin;
  j["pilot_sweeps"] = run.pilot_sweeps;
  j["seed"] = seed;
  j["stream_id"] = stream_id;
  return j;
}

ChainResult run_chain_job(const ChainJob& job, std::ostream* loops_out) {
  ChainResult result;
  RngStream rng(job.seed, job.stream_id);
  const LoopMeta meta{job.seed, job.stream_id, LOOPFLUCT_VERSION, job.to_json().dump()};
  result.summary = run_chain(job.config, job.run, rng, [&](const ChainState& state) {
    const LoopPath loop = state.loop();
    ObservableRecord rec = measure(loop, job.config.h);
    rec.seed = job.seed;
    rec.stream_id = job.stream_id;
    rec.sweep = state.sweep;
    result.records.push_back(rec);
    if (loops_out) write_loop_binary(*loops_out, loop, meta);
  });
  return result;
}

ChainResult cmd_chain(const ChainJob& job, const fs::path& out) {
  fs::create_directories(out);
  const fs::path loops_path = out / "loops.bin";
  std::ofstream loops = open_out(loops_path, true);
  ChainResult result = run_chain_job(job, &loops);
  check_written(loops, loops_path);

  const std::string config = job.to_json().dump();
  const fs::path csv_path = out / "observables.csv";
  std::ofstream csv = open_out(csv_path);
  csv << "# tool_version: " << tool_version() << "\n# config: " << config << "\n# seed: " << job.seed
      << '\n';
  write_observables_csv(csv, result.records);
  check_written(csv, csv_path);

  const fs::path summary_path = out / "summary.json";
  std::ofstream summary = open_out(summary_path);
  nlohmann::ordered_json s = nlohmann::ordered_json::parse(result.summary.to_json());
  s["tool_version"] = tool_version();
  s["job"] = job.to_json();
  summary << s.dump(2) << '\n';
  check_written(summary, summary_path);
  return result;
}

int cmd_verify(const std::string& selector, std::uint64_t seed, std::ostream& out) {
  const std::vector<verify::CheckReport> reports = verify::run_suite(selector, seed);
  bool all = true;
  for (const auto& r : reports) {
    out << r.to_json() << '\n';
    all = all && r.passed;
  }
  out.flush();
  return all ? 0 : 1;
}

}  // namespace loopfluct::cli
