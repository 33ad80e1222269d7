#include "avcs/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"

namespace avcs {

namespace {

// Runs body(i) for i in [0, n). Each index is processed exactly once; results
// must be written to per-index slots so the outcome does not depend on
// scheduling.
template <class Body>
void parallel_for(std::int64_t n, unsigned threads, Body&& body) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : threads;
  workers = static_cast<unsigned>(std::min<std::int64_t>(workers, std::max<std::int64_t>(n, 1)));
  if (workers <= 1) {
    for (std::int64_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::int64_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (std::int64_t i = next++; i < n; i = next++) body(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
          next = n;
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

ConfSeqConfig confseq_config(const SimConfig& config, std::vector<double> grid, bool instantaneous) {
  ConfSeqConfig cs;
  cs.effect = config.effect;
  cs.alpha = config.alpha;
  cs.grid = std::move(grid);
  cs.prior = config.prior;
  cs.design = config.design;
  cs.track_instantaneous = instantaneous;
  cs.log_odds_families = config.log_odds_families;
  return cs;
}

nlohmann::json config_json(const SimConfig& c) {
  nlohmann::json j;
  j["theta_a"] = c.star.a();
  j["theta_b"] = c.star.b();
  j["n_a"] = c.design.n_a();
  j["n_b"] = c.design.n_b();
  j["m_max"] = c.m_max;
  j["n_streams"] = c.n_streams;
  j["seed"] = c.seed;
  j["alpha"] = c.alpha;
  j["prior"] = {c.prior.alpha_a, c.prior.beta_a, c.prior.alpha_b, c.prior.beta_b};
  return j;
}

}  // namespace

void SimConfig::validate() const {
  if (m_max < 1) throw std::invalid_argument("SimConfig: m_max must be >= 1");
  if (n_streams < 1) throw std::invalid_argument("SimConfig: n_streams must be >= 1");
  rejection_threshold(alpha);
  prior.validate();
}

std::vector<Block> generate_stream(const ThetaPair& star, const BlockDesign& design,
                                   std::int64_t m, std::uint64_t seed,
                                   std::uint64_t stream_index) {
  BlockSource source(star, design, seed, stream_index);
  std::vector<Block> blocks;
  blocks.reserve(static_cast<std::size_t>(std::max<std::int64_t>(m, 0)));
  for (std::int64_t j = 0; j < m; ++j) blocks.push_back(source.next());
  return blocks;
}

double mc_sigma(double p, std::int64_t n) {
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

Type1Result run_type1(const SimConfig& config) {
  config.validate();
  if (!membership(config.null, config.star)) {
    throw std::invalid_argument("run_type1: star (" + std::to_string(config.star.a()) + ", " +
                                std::to_string(config.star.b()) + ") is not in the null " +
                                config.null.to_string());
  }
  const EProcessConfig ep{config.design, config.null, config.prior};
  std::vector<std::uint8_t> rejected(static_cast<std::size_t>(config.n_streams), 0);
  parallel_for(config.n_streams, config.threads, [&](std::int64_t i) {
    BlockSource source(config.star, config.design, config.seed, static_cast<std::uint64_t>(i));
    EProcessState state(ep);
    for (std::int64_t m = 0; m < config.m_max; ++m) {
      state = update(state, source.next());
      if (decision(state, config.alpha) == Decision::Reject) {
        rejected[static_cast<std::size_t>(i)] = 1;
        break;
      }
    }
  });
  Type1Result r;
  r.n_streams = config.n_streams;
  for (auto x : rejected) r.rejections += x;
  r.frequency = static_cast<double>(r.rejections) / static_cast<double>(r.n_streams);
  r.mc_sigma = mc_sigma(config.alpha, config.n_streams);
  r.bound = config.alpha + 3.0 * r.mc_sigma;
  r.within_bound = r.frequency <= r.bound;
  return r;
}

CoverageResult run_coverage(const SimConfig& config, bool track_instantaneous) {
  config.validate();
  const double truth = effect_value(config.effect, config.star);
  const auto grid = with_grid_point(config.grid.empty() ? default_grid(config.effect) : config.grid,
                                    truth, config.effect);
  const auto truth_index = static_cast<std::size_t>(
      std::lower_bound(grid.begin(), grid.end(), truth) - grid.begin());
  const ConfSeqConfig cs = confseq_config(config, grid, track_instantaneous);

  struct PerStream {
    std::uint8_t miscovered = 0;
    std::uint8_t monotone_bad = 0;
    std::uint8_t nesting_bad = 0;
    std::uint8_t outside_plain = 0;
  };
  std::vector<PerStream> out(static_cast<std::size_t>(config.n_streams));

  parallel_for(config.n_streams, config.threads, [&](std::int64_t i) {
    BlockSource source(config.star, config.design, config.seed, static_cast<std::uint64_t>(i));
    ConfSeqState state(cs);
    PerStream& r = out[static_cast<std::size_t>(i)];
    std::vector<std::uint8_t> prev_rejected(grid.size(), 0);
    ConfInterval prev_interval = state.current_interval();
    for (std::int64_t m = 0; m < config.m_max; ++m) {
      state.advance(source.next());
      for (std::size_t k = 0; k < grid.size(); ++k) {
        const bool now = state.rejected(k);
        if (prev_rejected[k] && !now) r.monotone_bad = 1;
        prev_rejected[k] = now ? 1 : 0;
      }
      const ConfInterval interval = state.current_interval();
      if (!prev_interval.contains(interval)) r.nesting_bad = 1;
      prev_interval = interval;
      if (track_instantaneous && !state.instantaneous_interval().contains(interval)) {
        r.outside_plain = 1;
      }
      if (state.rejected(truth_index)) r.miscovered = 1;
    }
  });

  CoverageResult r;
  r.n_streams = config.n_streams;
  r.true_delta = truth;
  for (const auto& s : out) {
    r.miscovered += s.miscovered;
    r.monotonicity_violations += s.monotone_bad;
    r.nesting_violations += s.nesting_bad;
    r.running_outside_plain += s.outside_plain;
  }
  r.frequency = static_cast<double>(r.miscovered) / static_cast<double>(r.n_streams);
  r.mc_sigma = mc_sigma(config.alpha, config.n_streams);
  r.bound = config.alpha + 3.0 * r.mc_sigma;
  r.within_bound = r.frequency <= r.bound;
  return r;
}

FamilyEmptinessResult run_family_emptiness(const SimConfig& config, Family family) {
  config.validate();
  if (config.effect != EffectSize::LogOddsRatio) {
    throw std::invalid_argument("run_family_emptiness: needs the log odds ratio effect");
  }
  const ConfSeqConfig cs = confseq_config(
      config, config.grid.empty() ? default_grid(config.effect) : config.grid, false);
  std::vector<std::uint8_t> emptied(static_cast<std::size_t>(config.n_streams), 0);
  parallel_for(config.n_streams, config.threads, [&](std::int64_t i) {
    BlockSource source(config.star, config.design, config.seed, static_cast<std::uint64_t>(i));
    ConfSeqState state(cs);
    for (std::int64_t m = 0; m < config.m_max; ++m) {
      state.advance(source.next());
      if (state.family_empty(family)) {
        emptied[static_cast<std::size_t>(i)] = 1;
        break;
      }
    }
  });
  FamilyEmptinessResult r;
  r.n_streams = config.n_streams;
  for (auto e : emptied) r.emptied += e;
  r.fraction = static_cast<double>(r.emptied) / static_cast<double>(r.n_streams);
  return r;
}

std::string summary_json(const SimConfig& config, const Type1Result& result) {
  nlohmann::json j;
  j["experiment"] = "type1";
  j["config"] = config_json(config);
  j["config"]["null"] = config.null.to_string();
  j["rejections"] = result.rejections;
  j["frequency"] = result.frequency;
  j["mc_sigma"] = result.mc_sigma;
  j["bound"] = result.bound;
  j["within_bound"] = result.within_bound;
  return j.dump();
}

std::string summary_json(const SimConfig& config, const CoverageResult& result) {
  nlohmann::json j;
  j["experiment"] = "coverage";
  j["config"] = config_json(config);
  j["config"]["effect"] = to_string(config.effect);
  j["config"]["log_odds_families"] = to_string(config.log_odds_families);
  j["true_delta"] = result.true_delta;
  j["miscovered"] = result.miscovered;
  j["frequency"] = result.frequency;
  j["mc_sigma"] = result.mc_sigma;
  j["bound"] = result.bound;
  j["within_bound"] = result.within_bound;
  j["monotonicity_violations"] = result.monotonicity_violations;
  j["nesting_violations"] = result.nesting_violations;
  return j.dump();
}

std::string confseq_trace(const ConfSeqConfig& config, const std::vector<Block>& blocks) {
  ConfSeqState state(config);
  std::ostringstream os;
  os << trace_header() << '\n' << trace_row(state) << '\n';
  for (const auto& block : blocks) {
    state.advance(block);
    os << trace_row(state) << '\n';
  }
  return os.str();
}

double smoothed_mle(std::int64_t ones, std::int64_t trials) {
  return (static_cast<double>(ones) + 0.5) / (static_cast<double>(trials) + 1.0);
}

}  // namespace avcs
