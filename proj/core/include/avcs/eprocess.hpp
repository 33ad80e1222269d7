#pragma once

#include <cstdint>

#include "avcs/model.hpp"
#include "avcs/null_spec.hpp"
#include "avcs/projection.hpp"

namespace avcs {

/// Independent beta priors on theta_a and theta_b. The plug-in alternative
/// for block j is the posterior mean given blocks 1..j-1.
struct BetaPrior {
  double alpha_a = 0.18;
  double beta_a = 0.18;
  double alpha_b = 0.18;
  double beta_b = 0.18;

  /// alpha_g = beta_g = gamma for both groups.
  static BetaPrior symmetric(double gamma);
  /// Throws std::invalid_argument unless all four parameters are finite and > 0.
  void validate() const;

  friend bool operator==(const BetaPrior&, const BetaPrior&) = default;
};

/// Plug-in estimates are clamped to [kPlugInClamp, 1 - kPlugInClamp].
inline constexpr double kPlugInClamp = 1e-12;

/// (alpha_g + ones_g) / (alpha_g + beta_g + trials_g).
double posterior_mean(const BetaPrior& prior, const GroupCounts& counts, Group group);

/// Posterior means of both groups, clamped into the open square.
ThetaPair plug_in_estimate(const BetaPrior& prior, const GroupCounts& counts);

/// Log of the block e-value prod p_star(y) / p_circ(y) over both groups.
/// Throws std::domain_error if circ is not interior.
double block_evalue(const ThetaPair& star, const ThetaPair& circ, const Block& block);

/// Log of the equality-null e-value written with the per-outcome mixture
/// denominator (n_a/n) p_{a*}(y) + (n_b/n) p_{b*}(y). For Bernoulli data this
/// coincides with block_evalue(star, project_equality(star).theta_circ, block).
double equality_mixture_evalue(const ThetaPair& star, const Block& block,
                               const BlockDesign& design);

struct EProcessConfig {
  BlockDesign design;
  NullSpec null;
  BetaPrior prior;

  friend bool operator==(const EProcessConfig&, const EProcessConfig&) = default;
};

/// What one block contributed to an e-process.
struct BlockStep {
  ThetaPair plug_in;
  Projection projection;
  double log_increment = 0.0;
};

/// Computes the contribution of `block` given the counts of all earlier
/// blocks. Does not look at `block` when forming the plug-in.
BlockStep block_step(const EProcessConfig& config, const GroupCounts& before, const Block& block);

/// Running test martingale against one null. A value type: update() returns
/// a new state and leaves the argument untouched.
class EProcessState {
 public:
  EProcessState() = default;
  explicit EProcessState(EProcessConfig config);
  EProcessState(EProcessConfig config, GroupCounts counts, double log_e, std::int64_t m);

  const EProcessConfig& config() const noexcept { return config_; }
  const GroupCounts& counts() const noexcept { return counts_; }
  double log_e() const noexcept { return log_e_; }
  std::int64_t m() const noexcept { return m_; }

  friend bool operator==(const EProcessState&, const EProcessState&) = default;

 private:
  EProcessConfig config_;
  GroupCounts counts_;
  double log_e_ = 0.0;
  std::int64_t m_ = 0;
};

/// Folds one completed block into the e-process. When `step` is non-null it
/// receives the plug-in, projection and increment used.
EProcessState update(const EProcessState& state, const Block& block, BlockStep* step = nullptr);

enum class Decision { Continue, Reject };

/// log(1/alpha); rejection happens at or above it.
double rejection_threshold(double alpha);

/// Reject iff log_e >= log(1/alpha). alpha must be in (0,1).
Decision decision(double log_e, double alpha);
Decision decision(const EProcessState& state, double alpha);

const char* to_string(Decision d) noexcept;

}  // namespace avcs
