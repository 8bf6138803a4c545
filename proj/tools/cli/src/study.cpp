#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <tuple>

#include "loopfluct/cli/commands.hpp"

namespace loopfluct::cli {

namespace fs = std::filesystem;

StudyConfig StudyConfig::from_json(const nlohmann::json& j) {
  StudyConfig c;
  if (j.contains("T_list")) c.T_list = j.at("T_list").get<std::vector<double>>();
  if (j.contains("n_per_T")) c.n_per_T = j.at("n_per_T").get<double>();
  if (j.contains("h_divisor")) c.h_divisor = j.at("h_divisor").get<double>();
  if (j.contains("chains_per_T")) c.chains_per_T = j.at("chains_per_T").get<int>();
  if (j.contains("sweeps")) c.sweeps = j.at("sweeps").get<std::int64_t>();
  if (j.contains("burn_in")) c.burn_in = j.at("burn_in").get<std::int64_t>();
  if (j.contains("thin")) c.thin = j.at("thin").get<std::int64_t>();
  if (j.contains("pilot_sweeps")) c.pilot_sweeps = j.at("pilot_sweeps").get<std::int64_t>();
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("out_dir")) c.out_dir = j.at("out_dir").get<std::string>();
  return c;
}

nlohmann::ordered_json StudyConfig::to_json() const {
  nlohmann::ordered_json j;
  j["T_list"] = T_list;
  j["n_rule"] = "n = " + std::to_string(n_per_T) + " * T, rounded up to a multiple of round(T^(1/3))";
  j["h_rule"] = "h = T / " + std::to_string(h_divisor);
  j["n_per_T"] = n_per_T;
  j["h_divisor"] = h_divisor;
  j["chains_per_T"] = chains_per_T;
  j["sweeps"] = sweeps;
  j["burn_in"] = burn_in;
  j["thin"] = thin;
  j["pilot_sweeps"] = pilot_sweeps;
  j["seed"] = seed;
  j["out_dir"] = out_dir.string();
  return j;
}

int study_m(double T) { return std::max(1, static_cast<int>(std::lround(std::cbrt(T)))); }

std::int64_t study_n(const StudyConfig& cfg, double T) {
  const auto m = static_cast<std::int64_t>(study_m(T));
  const auto base = static_cast<std::int64_t>(std::ceil(cfg.n_per_T * T - 1e-9));
  return (base + m - 1) / m * m;
}

std::vector<std::pair<std::string, ScalingFit>> fit_observables(
    const std::vector<ObservableRecord>& records) {
  using Getter = double (*)(const ObservableRecord&);
  const std::pair<const char*, Getter> observables[] = {
      {"ann_width", [](const ObservableRecord& r) { return r.ann_width; }},
      {"mlr", [](const ObservableRecord& r) { return r.mlr; }},
      {"longest_facet", [](const ObservableRecord& r) { return r.longest_facet; }},
      {"area_excess", [](const ObservableRecord& r) { return r.area_excess; }},
  };
  std::vector<std::pair<std::string, ScalingFit>> fits;
  for (const auto& [name, get] : observables) {
    // Per-chain means are the replicates of each T.
    std::map<std::pair<double, std::uint64_t>, std::pair<double, int>> chain_sums;
    for (const auto& r : records) {
      auto& acc = chain_sums[{r.T, r.stream_id}];
      acc.first += get(r);
      ++acc.second;
    }
    std::map<double, std::vector<double>> groups;
    for (const auto& [key, acc] : chain_sums) groups[key.first].push_back(acc.first / acc.second);
    fits.emplace_back(name, scaling_fit(groups));
  }
  return fits;
}

StudyResult run_study(const StudyConfig& cfg) {
  require(!cfg.T_list.empty(), "study: T_list is empty");
  require(cfg.chains_per_T >= 1, "study: chains_per_T must be positive");
  std::vector<ChainJob> jobs;
  std::uint64_t stream = 0;
  for (double T : cfg.T_list) {
    for (int c = 0; c < cfg.chains_per_T; ++c) {
      ChainJob job;
      job.config = ChainConfig::for_time(T, study_n(cfg, T));
      job.config.h = T / cfg.h_divisor;
      job.config.safety_margin = 6.0 * job.config.h * std::numbers::pi * T;
      job.run.sweeps = cfg.sweeps;
      job.run.burn_in = cfg.burn_in;
      job.run.thin = cfg.thin;
      job.run.pilot_sweeps = cfg.pilot_sweeps;
      job.seed = cfg.seed;
      job.stream_id = stream++;
      jobs.push_back(job);
    }
  }
  std::vector<ChainResult> results(jobs.size());
  parallel_for(jobs.size(), worker_count(jobs.size()),
               [&](std::size_t i) { results[i] = run_chain_job(jobs[i]); });

  StudyResult out;
  for (auto& r : results) {
    out.summaries.push_back(r.summary);
    out.records.insert(out.records.end(), r.records.begin(), r.records.end());
  }
  std::stable_sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.T, a.stream_id, a.sweep) < std::tie(b.T, b.stream_id, b.sweep);
  });
  try {
    out.fits = fit_observables(out.records);
  } catch (const Error& e) {
    out.fit_error = e.what();
  }
  return out;
}

StudyResult cmd_study(const StudyConfig& cfg) {
  StudyResult result = run_study(cfg);
  fs::create_directories(cfg.out_dir);
  const std::string header = "# tool_version: " + tool_version() + "\n# config: " +
                             cfg.to_json().dump() + "\n# seed: " + std::to_string(cfg.seed) + '\n';
  auto open = [&](const char* name) {
    std::ofstream os(cfg.out_dir / name);
    if (!os) fail(ErrorCode::Io, "cannot write " + (cfg.out_dir / name).string());
    return os;
  };
  {
    std::ofstream os = open("observables.csv");
    os << header;
    write_observables_csv(os, result.records);
  }
  {
    std::ofstream os = open("summaries.jsonl");
    for (const auto& s : result.summaries) os << s.to_json() << '\n';
  }
  {
    nlohmann::ordered_json j;
    j["tool_version"] = tool_version();
    j["config"] = cfg.to_json();
    j["seed"] = cfg.seed;
    if (!result.fit_error.empty()) j["fit_error"] = result.fit_error;
    for (const auto& [name, fit] : result.fits) {
      nlohmann::ordered_json f;
      f["exponent"] = fit.exponent;
      f["intercept"] = fit.intercept;
      f["ci_low"] = fit.ci_low;
      f["ci_high"] = fit.ci_high;
      f["points"] = fit.points;
      j["fits"][name] = f;
    }
    std::ofstream os = open("fits.json");
    os << j.dump(2) << '\n';
  }
  if (!result.fits.empty()) {
    std::ofstream os = open("scaling.svg");
    os << scaling_svg(result.fits);
  }
  return result;
}

}  // namespace loopfluct::cli
