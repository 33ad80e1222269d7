#include "avcs/eprocess.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace avcs {

BetaPrior BetaPrior::symmetric(double gamma) {
  BetaPrior p{gamma, gamma, gamma, gamma};
  p.validate();
  return p;
}

void BetaPrior::validate() const {
  for (double v : {alpha_a, beta_a, alpha_b, beta_b}) {
    if (!std::isfinite(v) || v <= 0.0) {
      std::ostringstream os;
      os << "BetaPrior parameters must be finite and positive, got (" << alpha_a << ", "
         << beta_a << ", " << alpha_b << ", " << beta_b << ")";
      throw std::invalid_argument(os.str());
    }
  }
}

double posterior_mean(const BetaPrior& prior, const GroupCounts& counts, Group group) {
  const double alpha = group == Group::A ? prior.alpha_a : prior.alpha_b;
  const double beta = group == Group::A ? prior.beta_a : prior.beta_b;
  return (alpha + static_cast<double>(counts.ones(group))) /
         (alpha + beta + static_cast<double>(counts.trials(group)));
}

ThetaPair plug_in_estimate(const BetaPrior& prior, const GroupCounts& counts) {
  auto clamp = [](double p) { return std::clamp(p, kPlugInClamp, 1.0 - kPlugInClamp); };
  return ThetaPair(clamp(posterior_mean(prior, counts, Group::A)),
                   clamp(posterior_mean(prior, counts, Group::B)));
}

double block_evalue(const ThetaPair& star, const ThetaPair& circ, const Block& block) {
  if (!circ.interior()) {
    throw std::domain_error("block_evalue: null point must be interior to [0,1]^2");
  }
  // Only the counts of ones and zeros per group matter.
  double log_e = 0.0;
  for (Group g : {Group::A, Group::B}) {
    std::int64_t ones = 0;
    const auto ys = block.outcomes(g);
    for (auto y : ys) ones += y;
    const auto zeros = static_cast<std::int64_t>(ys.size()) - ones;
    if (ones > 0) {
      log_e += static_cast<double>(ones) * (bern_log_pmf(star[g], 1) - bern_log_pmf(circ[g], 1));
    }
    if (zeros > 0) {
      log_e += static_cast<double>(zeros) * (bern_log_pmf(star[g], 0) - bern_log_pmf(circ[g], 0));
    }
  }
  return log_e;
}

double equality_mixture_evalue(const ThetaPair& star, const Block& block,
                               const BlockDesign& design) {
  validate_block(block, design);
  const double wa = static_cast<double>(design.n_a()) / static_cast<double>(design.n());
  const double wb = static_cast<double>(design.n_b()) / static_cast<double>(design.n());
  auto pmf = [](double theta, int y) { return y == 1 ? theta : 1.0 - theta; };
  double log_e = 0.0;
  for (Group g : {Group::A, Group::B}) {
    for (auto y : block.outcomes(g)) {
      const double mix = wa * pmf(star.a(), y) + wb * pmf(star.b(), y);
      if (mix == 0.0) {
        throw std::domain_error("equality_mixture_evalue: observed outcome has zero mixture mass");
      }
      log_e += bern_log_pmf(star[g], y) - std::log(mix);
    }
  }
  return log_e;
}

EProcessState::EProcessState(EProcessConfig config) : config_(std::move(config)) {
  config_.prior.validate();
}

EProcessState::EProcessState(EProcessConfig config, GroupCounts counts, double log_e,
                             std::int64_t m)
    : config_(std::move(config)), counts_(counts), log_e_(log_e), m_(m) {
  config_.prior.validate();
  if (m < 0 || !std::isfinite(log_e) || counts.trials_a != m * config_.design.n_a() ||
      counts.trials_b != m * config_.design.n_b() || counts.ones_a < 0 || counts.ones_b < 0 ||
      counts.ones_a > counts.trials_a || counts.ones_b > counts.trials_b) {
    throw std::invalid_argument("EProcessState: counts, m and log_e are inconsistent");
  }
}

BlockStep block_step(const EProcessConfig& config, const GroupCounts& before, const Block& block) {
  validate_block(block, config.design);
  BlockStep step;
  step.plug_in = plug_in_estimate(config.prior, before);
  step.projection = project(config.null, step.plug_in, config.design);
  step.log_increment = step.projection.interior_hit
                           ? 0.0
                           : block_evalue(step.plug_in, step.projection.theta_circ, block);
  return step;
}

EProcessState update(const EProcessState& state, const Block& block, BlockStep* step) {
  const BlockStep s = block_step(state.config(), state.counts(), block);
  GroupCounts counts = state.counts();
  counts.add(block);
  if (step != nullptr) *step = s;
  return EProcessState(state.config(), counts, state.log_e() + s.log_increment, state.m() + 1);
}

double rejection_threshold(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0,1)");
  }
  return std::log(1.0 / alpha);
}

Decision decision(double log_e, double alpha) {
  return log_e >= rejection_threshold(alpha) ? Decision::Reject : Decision::Continue;
}

Decision decision(const EProcessState& state, double alpha) {
  return decision(state.log_e(), alpha);
}

const char* to_string(Decision d) noexcept {
  return d == Decision::Reject ? "reject" : "continue";
}

}  // namespace avcs
