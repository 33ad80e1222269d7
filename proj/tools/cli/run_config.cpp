#include "run_config.hpp"

#include <cmath>

namespace avcs::cli {

namespace {

// Re-throws a core validation error with the option name in front.
template <class F>
auto with_field(const std::string& field, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(field + ": " + e.what());
  } catch (const std::domain_error& e) {
    throw ConfigError(field + ": " + e.what());
  }
}

}  // namespace

BlockDesign resolve_design(const RunConfig& rc) {
  if (rc.n_a < 1) throw ConfigError("--na: must be >= 1");
  if (rc.n_b < 1) throw ConfigError("--nb: must be >= 1");
  return BlockDesign(rc.n_a, rc.n_b);
}

BetaPrior resolve_prior(const RunConfig& rc) {
  BetaPrior p;
  if (rc.prior.empty()) {
    if (!(std::isfinite(rc.gamma) && rc.gamma > 0.0)) {
      throw ConfigError("--gamma: must be finite and > 0");
    }
    p = BetaPrior::symmetric(rc.gamma);
  } else {
    if (rc.prior.size() != 4) {
      throw ConfigError("--prior: expected 4 values (alpha_a beta_a alpha_b beta_b)");
    }
    p = BetaPrior{rc.prior[0], rc.prior[1], rc.prior[2], rc.prior[3]};
  }
  with_field("--prior", [&] { p.validate(); });
  return p;
}

NullSpec resolve_null(const RunConfig& rc) {
  return with_field("--null", [&] {
    const auto& k = rc.null_kind;
    if (k.find(':') != std::string::npos) return NullSpec::parse(k);
    if (k == "equality") return NullSpec::equality();
    if (k == "line") return NullSpec::line(rc.s, rc.c);
    if (k == "le") return NullSpec::half_plane_le(rc.s, rc.c);
    if (k == "ge") return NullSpec::half_plane_ge(rc.s, rc.c);
    if (k == "lor-le") return NullSpec::log_odds_le(rc.delta);
    if (k == "lor-ge") return NullSpec::log_odds_ge(rc.delta);
    if (k == "lor-band") return NullSpec::log_odds_band(rc.delta_lo, rc.delta_hi);
    throw std::invalid_argument("unknown null '" + k +
                                "' (expected equality, line, le, ge, lor-le, lor-ge or lor-band)");
  });
}

EffectSize resolve_effect(const RunConfig& rc) {
  return with_field("--effect", [&] { return parse_effect(rc.effect); });
}

LogOddsFamilies resolve_families(const RunConfig& rc) {
  return with_field("--lor-families", [&] { return parse_log_odds_families(rc.log_odds_families); });
}

std::vector<double> resolve_grid(const RunConfig& rc) {
  if (!rc.grid_lo && !rc.grid_hi && !rc.grid_step && !rc.grid_count) return {};
  if (!rc.grid_lo || !rc.grid_hi) {
    throw ConfigError("--grid-lo/--grid-hi: both bounds are needed for a custom grid");
  }
  const double lo = *rc.grid_lo;
  const double hi = *rc.grid_hi;
  if (!(lo < hi)) throw ConfigError("--grid-lo: must be below --grid-hi");
  std::vector<double> grid;
  if (rc.grid_spacing == "linear") {
    if (!rc.grid_step || !(*rc.grid_step > 0.0)) {
      throw ConfigError("--grid-step: a positive step is needed for a linear grid");
    }
    grid = with_field("--grid-step", [&] { return linear_grid(lo, hi, *rc.grid_step); });
  } else if (rc.grid_spacing == "log") {
    if (!(lo > 0.0)) throw ConfigError("--grid-lo: log spacing needs positive bounds");
    if (!rc.grid_count || *rc.grid_count < 2) {
      throw ConfigError("--grid-count: at least 2 points are needed for a log grid");
    }
    grid = with_field("--grid-count", [&] {
      return log_spaced_grid(std::log(lo), std::log(hi), *rc.grid_count);
    });
  } else {
    throw ConfigError("--grid-spacing: expected linear or log, got '" + rc.grid_spacing + "'");
  }
  return grid;
}

ThetaPair resolve_star(const RunConfig& rc) {
  return with_field("--theta-a/--theta-b", [&] { return ThetaPair(rc.theta_a, rc.theta_b); });
}

void check_alpha(const RunConfig& rc) {
  with_field("--alpha", [&] { rejection_threshold(rc.alpha); });
}

}  // namespace avcs::cli
