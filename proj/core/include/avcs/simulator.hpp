#pragma once

// Seeded Monte Carlo experiments. Streams are independent and each one draws
// from generators keyed by (seed, stream index, group), so results do not
// depend on the number of worker threads.

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "avcs/confseq.hpp"
#include "avcs/eprocess.hpp"
#include "avcs/rng.hpp"

namespace avcs {

struct SimConfig {
  ThetaPair star{0.5, 0.5};
  BlockDesign design;
  std::int64_t m_max = 200;
  std::int64_t n_streams = 1000;
  std::uint64_t seed = 1;
  double alpha = 0.05;
  EffectSize effect = EffectSize::RiskDifference;
  BetaPrior prior;
  /// Null for type-I experiments.
  NullSpec null;
  /// Grid for confidence-sequence experiments; empty means the default.
  std::vector<double> grid;
  LogOddsFamilies log_odds_families = LogOddsFamilies::Banded;
  /// 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;

  void validate() const;
};

/// m blocks from one stream. Deterministic in (seed, stream_index).
std::vector<Block> generate_stream(const ThetaPair& star, const BlockDesign& design,
                                   std::int64_t m, std::uint64_t seed,
                                   std::uint64_t stream_index = 0);

/// Binomial Monte Carlo standard error sqrt(p (1 - p) / n).
double mc_sigma(double p, std::int64_t n);

struct Type1Result {
  std::int64_t n_streams = 0;
  std::int64_t rejections = 0;
  double frequency = 0.0;
  /// Standard error at the nominal level, sqrt(alpha (1 - alpha) / n).
  double mc_sigma = 0.0;
  /// alpha + 3 mc_sigma.
  double bound = 0.0;
  bool within_bound = false;
};

/// Fraction of streams whose e-process against config.null ever reaches
/// 1/alpha within m_max blocks. Throws std::invalid_argument if config.star
/// is not in the null.
Type1Result run_type1(const SimConfig& config);

struct CoverageResult {
  std::int64_t n_streams = 0;
  double true_delta = 0.0;
  std::int64_t miscovered = 0;
  double frequency = 0.0;
  double mc_sigma = 0.0;
  double bound = 0.0;
  bool within_bound = false;
  /// Streams with current_set(m+1) not a subset of current_set(m).
  std::int64_t monotonicity_violations = 0;
  /// Streams with current_interval(m+1) not inside current_interval(m).
  std::int64_t nesting_violations = 0;
  /// Streams where the running interval left the instantaneous one.
  std::int64_t running_outside_plain = 0;
};

/// Fraction of streams in which the running intersection ever excludes the
/// true effect of config.star. The true value is inserted into the grid.
/// When `track_instantaneous` is set the running interval is also checked
/// against the instantaneous one at every m.
CoverageResult run_coverage(const SimConfig& config, bool track_instantaneous = false);

struct FamilyEmptinessResult {
  std::int64_t n_streams = 0;
  std::int64_t emptied = 0;
  double fraction = 0.0;
};

/// Fraction of streams in which every process of `family` is rejected by
/// block m_max (log odds ratio only).
FamilyEmptinessResult run_family_emptiness(const SimConfig& config, Family family);

/// Single JSON object (one line, no trailing newline) describing an experiment.
std::string summary_json(const SimConfig& config, const Type1Result& result);
std::string summary_json(const SimConfig& config, const CoverageResult& result);

/// CSV trace (trace_header() + one trace_row() per m, starting at m = 0) of a
/// confidence sequence run over the given blocks.
std::string confseq_trace(const ConfSeqConfig& config, const std::vector<Block>& blocks);

/// Display-only MLE with 0.5 / (trials + 1) smoothing: (ones + 0.5) / (trials + 1).
double smoothed_mle(std::int64_t ones, std::int64_t trials);

enum class Scenario { Fig2, Fig3, FigA1 };
Scenario parse_scenario(std::string_view text);
std::string to_string(Scenario s);

/// Writes the CSV traces of a figure scenario into `out_dir` (created if
/// needed) and returns the paths written, in a fixed order.
///
///   fig2   one file per setting: m,delta_lower,delta_upper,mle_a,mle_b
///   fig3   m,delta_lower,delta_upper,cs_plus_lower,cs_plus_upper,cs_plus_empty,
///          cs_minus_lower,cs_minus_upper,cs_minus_empty,mle_a,mle_b
///   figA1  m,plain_lower,plain_upper,running_lower,running_upper,mle_a,mle_b
std::vector<std::filesystem::path> figure_traces(Scenario scenario, std::uint64_t seed,
                                                 const std::filesystem::path& out_dir);

}  // namespace avcs
