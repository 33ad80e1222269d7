#pragma once

// Anytime-valid confidence sequences over a grid of candidate effect sizes.
//
// Every grid value delta owns one e-process (two for delta = 0 under the log
// odds ratio) testing the null "the effect equals delta". A grid value is
// rejected for good once its e-process reaches 1/alpha; the surviving values
// are the running intersection of the per-block confidence sets.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avcs/eprocess.hpp"

namespace avcs {

enum class EffectSize { RiskDifference, RelativeRisk, LogOddsRatio };

std::string to_string(EffectSize e);
/// Accepts "rd", "risk-difference", "rr", "relative-risk", "lor", "log-odds-ratio".
EffectSize parse_effect(std::string_view text);

/// theta_b - theta_a, theta_b / theta_a, or the log odds ratio.
double effect_value(EffectSize effect, const ThetaPair& theta);

/// How log-odds grid values are turned into convex nulls.
///
/// OneSided: delta >= 0 tests {lOR <= delta}, delta <= 0 tests {lOR >= delta}.
/// Banded: delta >= 0 tests {0 <= lOR <= delta}, delta <= 0 tests
/// {delta <= lOR <= 0}. Both are valid; Banded can also reject the whole
/// opposite-sign family once the data leave it.
enum class LogOddsFamilies { Banded, OneSided };

std::string to_string(LogOddsFamilies f);
LogOddsFamilies parse_log_odds_families(std::string_view text);

/// Which one-sided family a process belongs to. Risk difference and relative
/// risk use Single; the log odds ratio splits into Plus (delta >= 0, lower
/// bounds) and Minus (delta <= 0, upper bounds).
enum class Family { Single, Plus, Minus };

/// Default grids: risk difference step 0.01 on [-1,1]; relative risk 241
/// log-spaced points on log delta in [-3,3]; log odds ratio step 0.05 on [-6,6].
std::vector<double> default_grid(EffectSize effect);
/// lo, lo + step, ..., hi computed as lo + i*step (hi included when it falls
/// on the lattice within 1e-9 * step).
std::vector<double> linear_grid(double lo, double hi, double step);
/// exp(log_lo + i * (log_hi - log_lo) / (count - 1)), i = 0..count-1.
std::vector<double> log_spaced_grid(double log_lo, double log_hi, int count);
/// Symmetric lattice i*step for i = -k..k with k*step <= half_width.
std::vector<double> symmetric_grid(double half_width, double step);

/// Inserts `value` (and -value for log odds ratio grids) into a sorted grid,
/// replacing any existing point within 1e-9.
std::vector<double> with_grid_point(std::vector<double> grid, double value, EffectSize effect);

struct ConfSeqConfig {
  EffectSize effect = EffectSize::RiskDifference;
  double alpha = 0.05;
  std::vector<double> grid;  ///< Empty means default_grid(effect).
  BetaPrior prior;
  BlockDesign design;
  /// Keep updating rejected points so the instantaneous (non-intersected)
  /// confidence set is available.
  bool track_instantaneous = false;
  LogOddsFamilies log_odds_families = LogOddsFamilies::Banded;
};

struct ConfInterval {
  double lower = 0.0;
  double upper = 0.0;
  bool empty = true;

  /// True when `inner` lies within this interval (an empty inner always does).
  bool contains(const ConfInterval& inner) const noexcept;
  friend bool operator==(const ConfInterval&, const ConfInterval&) = default;
};

/// One e-process of the grid.
struct GridProcess {
  std::size_t grid_index = 0;
  Family family = Family::Single;
  /// Risk-difference values +-1 reduce the null to a corner of the square.
  /// Such a null is rejected outright by any outcome impossible under it and
  /// otherwise never accumulates evidence.
  std::optional<ThetaPair> corner;
  NullSpec null;
  double log_e = 0.0;
  bool rejected = false;
};

class ConfSeqState {
 public:
  /// Throws std::invalid_argument on alpha outside (0,1) or an invalid grid;
  /// the message lists the offending values.
  explicit ConfSeqState(ConfSeqConfig config);

  const ConfSeqConfig& config() const noexcept { return config_; }
  std::span<const double> grid() const noexcept { return config_.grid; }
  std::int64_t m() const noexcept { return m_; }
  const GroupCounts& counts() const noexcept { return counts_; }
  std::span<const GridProcess> processes() const noexcept { return processes_; }
  double threshold() const noexcept { return threshold_; }

  /// Advances every live process by one completed block.
  void advance(const Block& block);

  /// Grid value i is out of the running intersection.
  bool rejected(std::size_t i) const;
  /// Grid value i lies in the current (non-intersected) set, i.e. one of its
  /// processes currently sits below 1/alpha. Needs track_instantaneous for
  /// m > 0.
  bool instantaneous_member(std::size_t i) const;

  std::vector<double> current_set() const;
  ConfInterval current_interval() const;
  std::vector<double> instantaneous_set() const;
  ConfInterval instantaneous_interval() const;

  std::size_t alive_count() const;
  /// Surviving grid values of one family, e.g. the CS+ / CS- parts of a log
  /// odds ratio sequence.
  std::vector<double> family_set(Family family) const;
  bool family_empty(Family family) const { return family_set(family).empty(); }

  /// View of process k as a standalone e-process. Not available for corner nulls.
  EProcessState process_state(std::size_t k) const;

 private:
  ConfSeqConfig config_;
  std::vector<GridProcess> processes_;
  std::vector<std::vector<std::size_t>> by_grid_;
  GroupCounts counts_;
  std::int64_t m_ = 0;
  double threshold_ = 0.0;
};

/// Pure form of advance().
ConfSeqState update(ConfSeqState state, const Block& block);

/// Null tested at grid value delta for the given family.
NullSpec null_for(EffectSize effect, double delta, Family family, LogOddsFamilies mode);

/// Stable CSV trace: "m,effect,lower,upper,empty,n_alive".
std::string trace_header();
std::string trace_row(const ConfSeqState& state);

/// Per-point log e-values, long format: "m,delta,family,log_e,rejected".
std::string point_header();
std::string point_rows(const ConfSeqState& state);

const char* to_string(Family f) noexcept;

}  // namespace avcs
