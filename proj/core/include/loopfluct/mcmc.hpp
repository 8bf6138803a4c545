#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "loopfluct/raster.hpp"
#include "loopfluct/rng.hpp"
#include "loopfluct/sampler.hpp"

namespace loopfluct {

struct ChainConfig {
  double T = 1.0;
  std::int64_t n = 512;
  double h = 1.0 / 256.0;
  double area_target = 0.0;
  /// Raster-bias allowance added to area_target. The default 6 h pi T is twice the
  /// area error of a conservative raster along a curve of length about 2 pi T.
  double safety_margin = 0.0;
  double init_inflation = 0.05;
  std::int64_t max_cells = kDefaultMaxCells;

  /// h = T/256, area_target = pi T^2, safety_margin = 6 h pi T.
  static ChainConfig for_time(double T, std::int64_t n);

  double threshold() const { return area_target + safety_margin; }
  /// Throws InvalidInput on a malformed configuration.
  void validate() const;
  std::string to_json() const;
};

struct ProposalRecord {
  std::int64_t i = 0;
  std::int64_t j = 0;
  std::int64_t arc_len = 0;
  bool accepted = false;
  double new_area = 0.0;
};

/// Current loop plus counters. The area is the raster area of `points` at the chain's h.
class ChainState {
 public:
  ChainState(TimeGrid grid, std::vector<Point2> points, double area);

  const TimeGrid& grid() const { return grid_; }
  std::span<const Point2> points() const { return points_; }
  LoopPath loop() const { return LoopPath(grid_, points_); }
  /// Dense raster of the current loop (computed on demand).
  RasterRegion region(const ChainConfig& config) const;

  double area() const { return area_; }
  std::int64_t sweep = 0;
  std::int64_t accepted = 0;
  std::int64_t proposed = 0;

 private:
  friend ProposalRecord step(ChainState&, const ChainConfig&, RngStream&);

  TimeGrid grid_;
  std::vector<Point2> points_;
  double area_;
  std::vector<Point2> candidate_;
  std::vector<Point2> bridge_;
  RunAreaEngine engine_;
};

/// Regular n-gon through the origin with polygon area (1 + init_inflation)^2 pi T^2,
/// counterclockwise. Throws InitFailure if its raster area misses the threshold.
ChainState init_state(const ChainConfig& config);

/// One bridge-resampling proposal on the forward arc i -> j (mod n). The arc interior is
/// replaced by a Brownian bridge between the fixed endpoints; the move is accepted iff the
/// new raster area reaches config.threshold(). When the arc passes through index 0 the
/// loop is translated afterwards so that point 0 is again the origin.
ProposalRecord step(ChainState& state, const ChainConfig& config, RngStream& rng);

/// n proposals.
void run_sweep(ChainState& state, const ChainConfig& config, RngStream& rng);

struct ChainSummary {
  ChainConfig config;
  std::int64_t burn_in = 0;
  std::int64_t sweeps = 0;
  std::int64_t thin = 1;
  std::int64_t accepted = 0;
  std::int64_t proposed = 0;
  double acceptance_rate = 0.0;
  double iact_area = 1.0;  // in sweeps
  std::vector<double> area_trace;  // one entry per post-burn-in sweep
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  std::string to_json() const;
};

/// Called with the state after every thin-th post-burn-in sweep.
using ChainSink = std::function<void(const ChainState&)>;

struct RunOptions {
  std::int64_t sweeps = 1;
  std::int64_t thin = 1;
  /// Burn-in sweeps; negative selects the automatic rule (see auto_burn_in).
  std::int64_t burn_in = -1;
  std::int64_t pilot_sweeps = 100;
};

/// Burn-in length from a pilot trace: 50 sweeps per unit of integrated autocorrelation
/// time of the area, never shorter than the pilot itself.
std::int64_t auto_burn_in(std::span<const double> pilot_area_trace);

/// Runs burn-in then `sweeps` sweeps, emitting every thin-th state to `sink`. Each emitted
/// state is checked against a fresh dense rasterization (area and constraint).
ChainSummary run_chain(const ChainConfig& config, const RunOptions& options, RngStream& rng,
                       const ChainSink& sink);

}  // namespace loopfluct
