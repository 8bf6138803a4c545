#include "loopfluct/mcmc.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "loopfluct/stats.hpp"

namespace loopfluct {

ChainConfig ChainConfig::for_time(double T, std::int64_t n) {
  ChainConfig c;
  c.T = T;
  c.n = n;
  c.h = T / 256.0;
  c.area_target = std::numbers::pi * T * T;
  c.safety_margin = 6.0 * c.h * std::numbers::pi * T;
  return c;
}

void ChainConfig::validate() const {
  require(T > 0.0 && std::isfinite(T), "chain config: T must be positive");
  require(n >= 3, "chain config: n must be at least 3");
  require(h > 0.0 && std::isfinite(h), "chain config: h must be positive");
  require(std::isfinite(area_target), "chain config: area_target must be finite");
  require(safety_margin >= 0.0 && std::isfinite(safety_margin),
          "chain config: safety_margin must be non-negative");
  require(init_inflation > 0.0 && std::isfinite(init_inflation),
          "chain config: init_inflation must be positive");
  require(max_cells > 0, "chain config: max_cells must be positive");
}

std::string ChainConfig::to_json() const {
  nlohmann::ordered_json j;
  j["T"] = T;
  j["n"] = n;
  j["h"] = h;
  j["area_target"] = area_target;
  j["safety_margin"] = safety_margin;
  j["init_inflation"] = init_inflation;
  j["max_cells"] = max_cells;
  return j.dump();
}

ChainState::ChainState(TimeGrid grid, std::vector<Point2> points, double area)
    : grid_(grid), points_(std::move(points)), area_(area) {
  require(static_cast<std::int64_t>(points_.size()) == grid_.n(), "ChainState: size mismatch");
  require(points_[0] == Point2{}, "ChainState: points[0] must be the origin");
}

RasterRegion ChainState::region(const ChainConfig& config) const {
  return enclosed_region(points_, config.h, config.max_cells);
}

ChainState init_state(const ChainConfig& config) {
  config.validate();
  const auto n = static_cast<double>(config.n);
  const double r0 = (1.0 + config.init_inflation) * config.T *
                    std::sqrt(2.0 * std::numbers::pi / (n * std::sin(2.0 * std::numbers::pi / n)));
  std::vector<Point2> pts(static_cast<std::size_t>(config.n));
  for (std::int64_t k = 1; k < config.n; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
    pts[k] = {r0 * (std::cos(a) - 1.0), r0 * std::sin(a)};
  }
  RunAreaEngine engine;
  const double area = engine.area(pts, config.h, config.max_cells);
  if (area < config.threshold()) {
    std::ostringstream msg;
    msg << "initial n-gon has raster area " << area << " below the required "
        << config.threshold() << "; increase init_inflation (currently "
        << config.init_inflation << ")";
    fail(ErrorCode::InitFailure, msg.str());
  }
  return ChainState(TimeGrid(config.T, config.n), std::move(pts), area);
}

ProposalRecord step(ChainState& state, const ChainConfig& config, RngStream& rng) {
  const std::int64_t n = state.grid_.n();
  ProposalRecord rec;
  rec.i = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
  rec.j = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - 1)));
  if (rec.j >= rec.i) ++rec.j;
  rec.arc_len = ((rec.j - rec.i) % n + n) % n;
  ++state.proposed;

  if (rec.arc_len == 1) {
    // No interior points: the proposal reproduces the current state.
    rec.accepted = true;
    rec.new_area = state.area_;
    ++state.accepted;
    return rec;
  }

  auto& cand = state.candidate_;
  cand = state.points_;
  const Point2 p = cand[static_cast<std::size_t>(rec.i)];
  const Point2 q = cand[static_cast<std::size_t>(rec.j)];
  sample_bridge_into(p, q, static_cast<double>(rec.arc_len) * state.grid_.dt(), rec.arc_len, rng,
                     state.bridge_);
  for (std::int64_t k = 1; k < rec.arc_len; ++k) {
    cand[static_cast<std::size_t>((rec.i + k) % n)] = state.bridge_[static_cast<std::size_t>(k)];
  }
  if (rec.i + rec.arc_len > n) {
    const Point2 shift = cand[0];
    for (Point2& pt : cand) pt -= shift;
  }

  rec.new_area = state.engine_.area(cand, config.h, config.max_cells);
  rec.accepted = rec.new_area >= config.threshold();
  if (rec.accepted) {
    std::swap(state.points_, cand);
    state.area_ = rec.new_area;
    ++state.accepted;
  }
  return rec;
}

void run_sweep(ChainState& state, const ChainConfig& config, RngStream& rng) {
  for (std::int64_t k = 0; k < state.grid().n(); ++k) step(state, config, rng);
  ++state.sweep;
}

std::int64_t auto_burn_in(std::span<const double> pilot_area_trace) {
  const double tau = integrated_autocorrelation_time(pilot_area_trace);
  const auto rule = static_cast<std::int64_t>(std::ceil(50.0 * tau));
  return std::max(rule, static_cast<std::int64_t>(pilot_area_trace.size()));
}

std::string ChainSummary::to_json() const {
  nlohmann::ordered_json j;
  j["config"] = nlohmann::ordered_json::parse(config.to_json());
  j["burn_in"] = burn_in;
  j["sweeps"] = sweeps;
  j["thin"] = thin;
  j["accepted"] = accepted;
  j["proposed"] = proposed;
  j["acceptance_rate"] = acceptance_rate;
  j["iact_area"] = iact_area;
  j["seed"] = seed;
  j["stream_id"] = stream_id;
  return j.dump();
}

ChainSummary run_chain(const ChainConfig& config, const RunOptions& options, RngStream& rng,
                       const ChainSink& sink) {
  require(options.sweeps >= 1, "run_chain: sweeps must be at least 1");
  require(options.thin >= 1, "run_chain: thin must be at least 1");
  ChainState state = init_state(config);

  std::int64_t burn_in = options.burn_in;
  if (burn_in < 0) {
    require(options.pilot_sweeps >= 4, "run_chain: pilot_sweeps must be at least 4");
    std::vector<double> pilot;
    for (std::int64_t s = 0; s < options.pilot_sweeps; ++s) {
      run_sweep(state, config, rng);
      pilot.push_back(state.area());
    }
    burn_in = auto_burn_in(pilot);
  }
  while (state.sweep < burn_in) run_sweep(state, config, rng);

  ChainSummary summary;
  summary.config = config;
  summary.burn_in = burn_in;
  summary.sweeps = options.sweeps;
  summary.thin = options.thin;
  summary.seed = rng.seed();
  summary.stream_id = rng.stream_id();
  summary.area_trace.reserve(static_cast<std::size_t>(options.sweeps));

  for (std::int64_t s = 1; s <= options.sweeps; ++s) {
    run_sweep(state, config, rng);
    summary.area_trace.push_back(state.area());
    if (s % options.thin != 0) continue;
    const RasterRegion region = state.region(config);
    if (region.area() != state.area() || region.area() < config.threshold()) {
      std::ostringstream msg;
      msg << "chain state at sweep " << state.sweep << " has cached area " << state.area()
          << " but recomputed area " << region.area() << " (threshold " << config.threshold() << ")";
      fail(ErrorCode::InvariantViolation, msg.str());
    }
    if (sink) sink(state);
  }
  summary.accepted = state.accepted;
  summary.proposed = state.proposed;
  summary.acceptance_rate =
      static_cast<double>(state.accepted) / static_cast<double>(state.proposed);
  summary.iact_area = integrated_autocorrelation_time(summary.area_trace);
  return summary;
}

}  // namespace loopfluct
