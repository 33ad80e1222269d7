#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "avcs/confseq.hpp"
#include "avcs/eprocess.hpp"
#include "avcs/simulator.hpp"

namespace avcs::cli {

/// Invalid option value. The message starts with the option name.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Everything a subcommand needs, as parsed from flags and the config file.
struct RunConfig {
  std::string subcommand;

  // Design, level and prior.
  std::int64_t n_a = 1;
  std::int64_t n_b = 1;
  double alpha = 0.05;
  double gamma = 0.18;
  /// alpha_a, beta_a, alpha_b, beta_b; overrides gamma when set.
  std::vector<double> prior;

  // Null for test mode, type-I simulation and project. `null_kind` is one of
  // equality, line, le, ge, lor-le, lor-ge, lor-band, or a full canonical
  // form such as "line:0.1:1".
  std::string null_kind = "equality";
  double s = 0.0;
  double c = 1.0;
  double delta = 0.0;
  double delta_lo = 0.0;
  double delta_hi = 0.0;

  // Confidence-sequence mode. An empty effect selects test mode in analyze.
  std::string effect;
  std::string log_odds_families = "banded";
  std::string grid_spacing = "linear";
  std::optional<double> grid_lo;
  std::optional<double> grid_hi;
  std::optional<double> grid_step;
  std::optional<int> grid_count;

  // Alternative for project and simulate.
  double theta_a = 0.5;
  double theta_b = 0.5;

  // I/O.
  std::string input = "-";
  std::string output = "-";
  std::string points;
  std::string resume;
  std::string save_snapshot;
  std::int64_t lookahead = 10000;

  // Simulation and traces.
  std::string experiment;
  std::string scenario;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> streams;
  std::int64_t m_max = 200;
  unsigned threads = 0;
  bool instantaneous = false;
  std::string out_dir = "traces";
};

BlockDesign resolve_design(const RunConfig& rc);
BetaPrior resolve_prior(const RunConfig& rc);
NullSpec resolve_null(const RunConfig& rc);
EffectSize resolve_effect(const RunConfig& rc);
LogOddsFamilies resolve_families(const RunConfig& rc);
/// Empty when no grid option was given (the effect's default grid applies).
std::vector<double> resolve_grid(const RunConfig& rc);
ThetaPair resolve_star(const RunConfig& rc);
void check_alpha(const RunConfig& rc);

}  // namespace avcs::cli
