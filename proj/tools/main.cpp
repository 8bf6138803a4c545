#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "loopfluct/cli/commands.hpp"

namespace {

namespace lc = loopfluct::cli;

nlohmann::json load_config(const std::string& path) {
  if (path.empty()) return nlohmann::json::object();
  std::ifstream is(path);
  if (!is) loopfluct::fail(loopfluct::ErrorCode::Io, "cannot open config '" + path + "'");
  return nlohmann::json::parse(is);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulate and measure planar Brownian loops conditioned on large enclosed area"};
  app.set_version_flag("--version", lc::tool_version());
  app.require_subcommand(1);

  // Shared flag overrides. Unset flags leave the config file value in place.
  std::string config_path, out;
  double T = 0.0;
  std::uint64_t seed = 0;
  std::int64_t sweeps = 0;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--T", T, "Loop duration T")->check(CLI::PositiveNumber);
    sub->add_option("--seed", seed, "64-bit seed");
    sub->add_option("--out", out, "Output directory (verify: output file)");
  };

  auto* sample = app.add_subcommand("sample", "Write unconditioned Brownian loops");
  add_common(sample);
  std::int64_t n = 0, count = 1;
  sample->add_option("--n", n, "Time steps per loop")->check(CLI::PositiveNumber);
  sample->add_option("--count", count, "Number of loops")->check(CLI::NonNegativeNumber);

  auto* chain = app.add_subcommand("chain", "Run one area-conditioned chain");
  add_common(chain);
  chain->add_option("--sweeps", sweeps, "Post-burn-in sweeps")->check(CLI::PositiveNumber);
  std::int64_t chain_n = 0, thin = 0, burn_in = -2;
  std::uint64_t stream = 0;
  bool stream_set = false;
  chain->add_option("--n", chain_n, "Time steps per loop")->check(CLI::PositiveNumber);
  chain->add_option("--thin", thin, "Emit every k-th sweep")->check(CLI::PositiveNumber);
  chain->add_option("--burn-in", burn_in, "Burn-in sweeps (-1 = automatic)");
  chain->add_option_function<std::uint64_t>("--stream", [&](const std::uint64_t& v) {
    stream = v;
    stream_set = true;
  }, "Stream id");

  auto* study = app.add_subcommand("study", "Run the multi-T scaling study");
  add_common(study);
  study->add_option("--sweeps", sweeps, "Post-burn-in sweeps per chain")->check(CLI::PositiveNumber);
  int chains = 0;
  study->add_option("--chains", chains, "Chains per T")->check(CLI::PositiveNumber);
  std::vector<double> T_list;
  study->add_option("--T-list", T_list, "Loop durations");

  auto* verify = app.add_subcommand("verify", "Run numerical verification checks");
  add_common(verify);
  std::string selector = "all";
  verify->add_option("--check", selector, "'all' or comma-separated check names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    const nlohmann::json cfg = load_config(config_path);
    if (*sample) {
      lc::SampleOptions opts;
      opts.T = cfg.value("T", 1.0);
      opts.n = cfg.value("n", std::int64_t{1024});
      opts.count = cfg.value("count", std::int64_t{1});
      opts.seed = cfg.value("seed", std::uint64_t{1});
      opts.out = cfg.value("out", std::string("loops"));
      if (sample->count("--T")) opts.T = T;
      if (sample->count("--n")) opts.n = n;
      if (sample->count("--count")) opts.count = count;
      if (sample->count("--seed")) opts.seed = seed;
      if (sample->count("--out")) opts.out = out;
      const auto files = lc::cmd_sample(opts);
      std::cout << "wrote " << files.size() << " files to " << opts.out.string() << '\n';
      return 0;
    }
    if (*chain) {
      nlohmann::json j = cfg;
      if (chain->count("--T")) j["T"] = T;
      if (chain->count("--n")) j["n"] = chain_n;
      if (chain->count("--seed")) j["seed"] = seed;
      if (chain->count("--sweeps")) j["sweeps"] = sweeps;
      if (chain->count("--thin")) j["thin"] = thin;
      if (chain->count("--burn-in")) j["burn_in"] = burn_in;
      if (stream_set) j["stream_id"] = stream;
      const lc::ChainJob job = lc::ChainJob::from_json(j);
      const std::string dir = !out.empty() ? out : cfg.value("out", std::string("chain"));
      const lc::ChainResult r = lc::cmd_chain(job, dir);
      std::cout << r.summary.to_json() << '\n';
      return 0;
    }
    if (*study) {
      lc::StudyConfig sc = lc::StudyConfig::from_json(cfg);
      if (study->count("--T")) sc.T_list = {T};
      if (study->count("--T-list")) sc.T_list = T_list;
      if (study->count("--seed")) sc.seed = seed;
      if (study->count("--sweeps")) sc.sweeps = sweeps;
      if (study->count("--chains")) sc.chains_per_T = chains;
      if (study->count("--out")) sc.out_dir = out;
      const lc::StudyResult r = lc::cmd_study(sc);
      std::cout << "records: " << r.records.size() << '\n';
      if (!r.fit_error.empty()) std::cout << "fit refused: " << r.fit_error << '\n';
      for (const auto& [name, fit] : r.fits) {
        std::cout << name << ": exponent " << fit.exponent << " [" << fit.ci_low << ", "
                  << fit.ci_high << "]\n";
      }
      return 0;
    }
    if (*verify) {
      const std::uint64_t s = verify->count("--seed") ? seed : cfg.value("seed", std::uint64_t{1});
      if (verify->count("--out")) {
        std::ofstream os(out);
        if (!os) loopfluct::fail(loopfluct::ErrorCode::Io, "cannot open '" + out + "'");
        return lc::cmd_verify(selector, s, os);
      }
      return lc::cmd_verify(selector, s, std::cout);
    }
  } catch (const loopfluct::Error& e) {
    std::cerr << "error (" << loopfluct::to_string(e.code()) << "): " << e.what() << '\n';
    return e.code() == loopfluct::ErrorCode::InvalidInput ? 2 : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
