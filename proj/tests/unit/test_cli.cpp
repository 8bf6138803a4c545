#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "loopfluct/cli/commands.hpp"
#include "loopfluct/loop_io.hpp"

namespace loopfluct::cli {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("loopfluct_") + info->name());
    fs::remove_all(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

TEST(Sample, ZeroCountWritesNothing) {
  TempDir dir;
  SampleOptions o;
  o.count = 0;
  o.out = dir.path();
  EXPECT_TRUE(cmd_sample(o).empty());
  EXPECT_FALSE(fs::exists(dir.path()));
}

TEST(Sample, OneLoopInBothFormats) {
  TempDir dir;
  SampleOptions o;
  o.count = 1;
  o.n = 32;
  o.T = 2.0;
  o.seed = 17;
  o.out = dir.path();
  const auto files = cmd_sample(o);
  ASSERT_EQ(files.size(), 2u);
  EXPECT_EQ(files[0].filename(), "loop_000000.bin");
  std::ifstream is(files[0], std::ios::binary);
  const auto loops = read_all_loops_binary(is);
  ASSERT_EQ(loops.size(), 1u);
  EXPECT_EQ(loops[0].seed, 17u);
  EXPECT_EQ(loops[0].loop.size(), 32);
  RngStream rng(17, 0);
  EXPECT_EQ(loops[0].loop, sample_loop(TimeGrid(2.0, 32), rng));
  const std::string csv = slurp(files[1]);
  EXPECT_NE(csv.find("# tool: loopfluct"), std::string::npos);
  EXPECT_NE(csv.find("index,x,y\n0,0,0\n"), std::string::npos);
}

TEST(Sample, RerunIsByteIdentical) {
  TempDir dir;
  SampleOptions o;
  o.count = 3;
  o.n = 64;
  o.out = dir.path() / "a";
  const auto a = cmd_sample(o);
  o.out = dir.path() / "b";
  const auto b = cmd_sample(o);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(slurp(a[k]), slurp(b[k]));
  EXPECT_NE(slurp(a[0]), slurp(a[2]));
}

TEST(Sample, RejectsNegativeCount) {
  SampleOptions o;
  o.count = -1;
  EXPECT_THROW(cmd_sample(o), Error);
}

TEST(ChainJob, JsonDefaultsAndRoundTrip) {
  const ChainJob job = ChainJob::from_json(nlohmann::json::parse(R"({"T": 2, "sweeps": 7, "seed": 3})"));
  EXPECT_EQ(job.config.n, 64);
  EXPECT_DOUBLE_EQ(job.config.h, 2.0 / 256);
  EXPECT_EQ(job.run.sweeps, 7);
  EXPECT_EQ(job.run.burn_in, -1);
  EXPECT_EQ(job.seed, 3u);
  const ChainJob again = ChainJob::from_json(job.to_json());
  EXPECT_EQ(again.to_json().dump(), job.to_json().dump());
  EXPECT_THROW(ChainJob::from_json(nlohmann::json::parse(R"({"T": -1})")), Error);
}

TEST(Chain, SmokeRunWritesOutputs) {
  TempDir dir;
  ChainJob job = ChainJob::from_json(
      nlohmann::json::parse(R"({"T": 1, "n": 32, "sweeps": 6, "thin": 2, "burn_in": 4, "seed": 5})"));
  const ChainResult r = cmd_chain(job, dir.path());
  ASSERT_EQ(r.records.size(), 3u);
  EXPECT_EQ(r.records[0].sweep, 6);
  EXPECT_EQ(r.records[0].seed, 5u);
  std::ifstream loops(dir.path() / "loops.bin", std::ios::binary);
  EXPECT_EQ(read_all_loops_binary(loops).size(), 3u);
  const std::string csv = slurp(dir.path() / "observables.csv");
  EXPECT_EQ(csv.rfind("# tool_version: ", 0), 0u);
  EXPECT_NE(csv.find(observables_csv_header()), std::string::npos);
  const auto summary = nlohmann::json::parse(slurp(dir.path() / "summary.json"));
  EXPECT_EQ(summary["burn_in"], 4);
  EXPECT_EQ(summary["job"]["seed"], 5);

  const ChainResult again = run_chain_job(job);
  ASSERT_EQ(again.records.size(), r.records.size());
  for (std::size_t k = 0; k < r.records.size(); ++k) EXPECT_EQ(again.records[k].area, r.records[k].area);
}

TEST(Study, SizeRules) {
  StudyConfig c;
  EXPECT_EQ(study_m(16), 3);
  EXPECT_EQ(study_m(64), 4);
  EXPECT_EQ(study_m(128), 5);
  EXPECT_EQ(study_n(c, 16), 513);
  EXPECT_EQ(study_n(c, 64), 2048);
  EXPECT_EQ(study_n(c, 128), 4100);
  EXPECT_EQ(study_n(c, 128) % study_m(128), 0);
}

TEST(Study, ConfigJsonRoundTrip) {
  StudyConfig c;
  c.T_list = {2, 4};
  c.chains_per_T = 3;
  c.seed = 99;
  const StudyConfig d = StudyConfig::from_json(c.to_json());
  EXPECT_EQ(d.T_list, c.T_list);
  EXPECT_EQ(d.chains_per_T, 3);
  EXPECT_EQ(d.seed, 99u);
}

TEST(Study, SingleTimeRefusesFit) {
  TempDir dir;
  StudyConfig c;
  c.T_list = {2.0};
  c.chains_per_T = 2;
  c.sweeps = 4;
  c.thin = 2;
  c.burn_in = 2;
  c.out_dir = dir.path();
  const StudyResult r = cmd_study(c);
  EXPECT_EQ(r.records.size(), 4u);
  EXPECT_EQ(r.summaries.size(), 2u);
  EXPECT_TRUE(r.fits.empty());
  EXPECT_FALSE(r.fit_error.empty());
  const auto fits = nlohmann::json::parse(slurp(dir.path() / "fits.json"));
  EXPECT_TRUE(fits.contains("fit_error"));
  EXPECT_FALSE(fs::exists(dir.path() / "scaling.svg"));
  EXPECT_TRUE(fs::exists(dir.path() / "summaries.jsonl"));
}

TEST(Study, ThreeTimesProduceFitsAndSvg) {
  TempDir dir;
  StudyConfig c;
  c.T_list = {1.0, 2.0, 4.0};
  c.n_per_T = 16;
  c.chains_per_T = 2;
  c.sweeps = 4;
  c.thin = 2;
  c.burn_in = 4;
  c.out_dir = dir.path();
  const StudyResult r = cmd_study(c);
  ASSERT_EQ(r.fits.size(), 4u);
  EXPECT_EQ(r.fits[0].first, "ann_width");
  const std::string svg = slurp(dir.path() / "scaling.svg");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::vector<std::uint64_t> streams;
  for (const auto& s : r.summaries) streams.push_back(s.stream_id);
  EXPECT_EQ(streams, (std::vector<std::uint64_t>{0, 1, 2, 3, 4, 5}));
}

TEST(Study, ResultIndependentOfThreadCount) {
  StudyConfig c;
  c.T_list = {1.0};
  c.n_per_T = 16;
  c.chains_per_T = 3;
  c.sweeps = 3;
  c.burn_in = 2;
  c.thin = 1;
  setenv("LOOPFLUCT_THREADS", "1", 1);
  const StudyResult one = run_study(c);
  setenv("LOOPFLUCT_THREADS", "3", 1);
  const StudyResult three = run_study(c);
  unsetenv("LOOPFLUCT_THREADS");
  ASSERT_EQ(one.records.size(), three.records.size());
  for (std::size_t k = 0; k < one.records.size(); ++k) {
    EXPECT_EQ(one.records[k].area, three.records[k].area);
    EXPECT_EQ(one.records[k].mlr, three.records[k].mlr);
  }
}

TEST(Workers, CountHonoursEnvironmentAndJobs) {
  setenv("LOOPFLUCT_THREADS", "2", 1);
  EXPECT_EQ(worker_count(10), 2u);
  EXPECT_EQ(worker_count(1), 1u);
  unsetenv("LOOPFLUCT_THREADS");
  EXPECT_GE(worker_count(10), 1u);
}

TEST(Workers, ParallelForPropagatesFirstError) {
  std::vector<int> hits(20);
  parallel_for(20, 4, [&](std::size_t i) { hits[i] = 1; });
  EXPECT_EQ(std::count(hits.begin(), hits.end(), 1), 20);
  EXPECT_THROW(parallel_for(5, 2, [](std::size_t i) {
                 if (i == 3) throw Error(ErrorCode::Io, "boom");
               }),
               Error);
}

TEST(Verify, SingleCheckEmitsOneLine) {
  std::ostringstream os;
  EXPECT_EQ(cmd_verify("bonnesen", 1, os), 0);
  const std::string out = os.str();
  EXPECT_EQ(std::count(out.begin(), out.end(), '\n'), 1);
  EXPECT_EQ(nlohmann::json::parse(out)["name"], "bonnesen");
  std::ostringstream again;
  cmd_verify("bonnesen", 1, again);
  EXPECT_EQ(out, again.str());
}

}  // namespace
}  // namespace loopfluct::cli
