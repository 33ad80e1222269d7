#include "avcs/confseq.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "avcs/format.hpp"

namespace avcs {

namespace {

constexpr double kSameGridPoint = 1e-9;

[[noreturn]] void bad_grid(const std::string& why, const std::vector<double>& offending) {
  std::ostringstream os;
  os << "invalid grid: " << why;
  if (!offending.empty()) {
    os << " [";
    const std::size_t shown = std::min<std::size_t>(offending.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
      os << (i ? ", " : "") << format_double(offending[i]);
    }
    if (offending.size() > shown) os << ", ... (" << offending.size() << " total)";
    os << "]";
  }
  throw std::invalid_argument(os.str());
}

void validate_grid(EffectSize effect, const std::vector<double>& grid) {
  if (grid.empty()) bad_grid("grid is empty", {});
  std::vector<double> bad;
  for (double x : grid) {
    if (!std::isfinite(x)) bad.push_back(x);
  }
  if (!bad.empty()) bad_grid("non-finite values", bad);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) bad.push_back(grid[i]);
  }
  if (!bad.empty()) bad_grid("values must be strictly increasing", bad);
  switch (effect) {
    case EffectSize::RiskDifference:
      for (double x : grid) {
        if (x < -1.0 || x > 1.0) bad.push_back(x);
      }
      if (!bad.empty()) bad_grid("risk difference values must lie in [-1,1]", bad);
      break;
    case EffectSize::RelativeRisk:
      for (double x : grid) {
        if (!(x > 0.0)) bad.push_back(x);
      }
      if (!bad.empty()) bad_grid("relative risk values must be > 0", bad);
      break;
    case EffectSize::LogOddsRatio:
      for (double x : grid) {
        const auto it = std::lower_bound(grid.begin(), grid.end(), -x - kSameGridPoint);
        if (it == grid.end() || std::abs(*it + x) > kSameGridPoint) bad.push_back(x);
      }
      if (!bad.empty()) bad_grid("log odds ratio grid must be symmetric about 0", bad);
      break;
  }
}

bool impossible_under(const ThetaPair& corner, const Block& block) {
  for (Group g : {Group::A, Group::B}) {
    const double t = corner[g];
    for (auto y : block.outcomes(g)) {
      if ((t == 0.0 && y == 1) || (t == 1.0 && y == 0)) return true;
    }
  }
  return false;
}

ConfInterval hull(const std::vector<double>& values) {
  if (values.empty()) return ConfInterval{};
  return ConfInterval{values.front(), values.back(), false};
}

}  // namespace

std::string to_string(EffectSize e) {
  switch (e) {
    case EffectSize::RiskDifference:
      return "risk-difference";
    case EffectSize::RelativeRisk:
      return "relative-risk";
    case EffectSize::LogOddsRatio:
      return "log-odds-ratio";
  }
  return "?";
}

EffectSize parse_effect(std::string_view text) {
  if (text == "rd" || text == "risk-difference") return EffectSize::RiskDifference;
  if (text == "rr" || text == "relative-risk") return EffectSize::RelativeRisk;
  if (text == "lor" || text == "log-odds-ratio") return EffectSize::LogOddsRatio;
  throw std::invalid_argument("unknown effect size '" + std::string(text) + "'");
}

std::string to_string(LogOddsFamilies f) {
  return f == LogOddsFamilies::Banded ? "banded" : "one-sided";
}

LogOddsFamilies parse_log_odds_families(std::string_view text) {
  if (text == "banded") return LogOddsFamilies::Banded;
  if (text == "one-sided") return LogOddsFamilies::OneSided;
  throw std::invalid_argument("unknown log odds family mode '" + std::string(text) + "'");
}

const char* to_string(Family f) noexcept {
  switch (f) {
    case Family::Single:
      return "single";
    case Family::Plus:
      return "plus";
    case Family::Minus:
      return "minus";
  }
  return "?";
}

double effect_value(EffectSize effect, const ThetaPair& theta) {
  switch (effect) {
    case EffectSize::RiskDifference:
      return theta.b() - theta.a();
    case EffectSize::RelativeRisk:
      return theta.b() / theta.a();
    case EffectSize::LogOddsRatio:
      return log_odds_ratio(theta);
  }
  return 0.0;
}

std::vector<double> linear_grid(double lo, double hi, double step) {
  if (!(step > 0.0) || !(hi >= lo)) throw std::invalid_argument("linear_grid: need step > 0, hi >= lo");
  std::vector<double> out;
  const auto count = static_cast<long>(std::floor((hi - lo) / step + 1e-9)) + 1;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) out.push_back(lo + static_cast<double>(i) * step);
  return out;
}

std::vector<double> log_spaced_grid(double log_lo, double log_hi, int count) {
  if (count < 2 || !(log_hi > log_lo)) {
    throw std::invalid_argument("log_spaced_grid: need count >= 2 and log_hi > log_lo");
  }
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    out.push_back(std::exp(log_lo + (log_hi - log_lo) * i / (count - 1)));
  }
  return out;
}

std::vector<double> symmetric_grid(double half_width, double step) {
  if (!(step > 0.0) || !(half_width >= 0.0)) {
    throw std::invalid_argument("symmetric_grid: need step > 0, half_width >= 0");
  }
  const auto k = static_cast<long>(std::floor(half_width / step + 1e-9));
  std::vector<double> out;
  for (long i = -k; i <= k; ++i) out.push_back(static_cast<double>(i) * step);
  return out;
}

std::vector<double> default_grid(EffectSize effect) {
  switch (effect) {
    case EffectSize::RiskDifference: {
      // i / 100 keeps the lattice values exactly symmetric and hits 0.
      std::vector<double> g;
      for (int i = -100; i <= 100; ++i) g.push_back(i / 100.0);
      return g;
    }
    case EffectSize::RelativeRisk:
      return log_spaced_grid(-3.0, 3.0, 241);
    case EffectSize::LogOddsRatio:
      return symmetric_grid(6.0, 0.05);
  }
  return {};
}

std::vector<double> with_grid_point(std::vector<double> grid, double value, EffectSize effect) {
  auto insert = [&grid](double v) {
    auto it = std::lower_bound(grid.begin(), grid.end(), v - kSameGridPoint);
    if (it != grid.end() && std::abs(*it - v) <= kSameGridPoint) {
      *it = v;
    } else {
      grid.insert(std::lower_bound(grid.begin(), grid.end(), v), v);
    }
  };
  insert(value);
  if (effect == EffectSize::LogOddsRatio && value != 0.0) insert(-value);
  return grid;
}

bool ConfInterval::contains(const ConfInterval& inner) const noexcept {
  if (inner.empty) return true;
  if (empty) return false;
  return lower <= inner.lower && inner.upper <= upper;
}

NullSpec null_for(EffectSize effect, double delta, Family family, LogOddsFamilies mode) {
  switch (effect) {
    case EffectSize::RiskDifference:
      return NullSpec::line(delta, 1.0);
    case EffectSize::RelativeRisk:
      return NullSpec::line(0.0, delta);
    case EffectSize::LogOddsRatio:
      if (family == Family::Plus) {
        return mode == LogOddsFamilies::Banded ? NullSpec::log_odds_band(0.0, delta)
                                               : NullSpec::log_odds_le(delta);
      }
      if (family == Family::Minus) {
        return mode == LogOddsFamilies::Banded ? NullSpec::log_odds_band(delta, 0.0)
                                               : NullSpec::log_odds_ge(delta);
      }
      throw std::invalid_argument("log odds ratio processes belong to the plus or minus family");
  }
  throw std::invalid_argument("unknown effect size");
}

ConfSeqState::ConfSeqState(ConfSeqConfig config) : config_(std::move(config)) {
  threshold_ = rejection_threshold(config_.alpha);
  config_.prior.validate();
  if (config_.grid.empty()) config_.grid = default_grid(config_.effect);
  validate_grid(config_.effect, config_.grid);

  by_grid_.resize(config_.grid.size());
  auto add = [this](std::size_t i, Family family) {
    GridProcess p;
    p.grid_index = i;
    p.family = family;
    const double delta = config_.grid[i];
    if (config_.effect == EffectSize::RiskDifference && interior_segment(delta, 1.0).empty()) {
      p.corner = delta > 0.0 ? ThetaPair(0.0, 1.0) : ThetaPair(1.0, 0.0);
    } else {
      p.null = null_for(config_.effect, delta, family, config_.log_odds_families);
    }
    by_grid_[i].push_back(processes_.size());
    processes_.push_back(std::move(p));
  };
  for (std::size_t i = 0; i < config_.grid.size(); ++i) {
    const double delta = config_.grid[i];
    if (config_.effect != EffectSize::LogOddsRatio) {
      add(i, Family::Single);
      continue;
    }
    if (delta >= 0.0) add(i, Family::Plus);
    if (delta <= 0.0) add(i, Family::Minus);
  }
}

void ConfSeqState::advance(const Block& block) {
  validate_block(block, config_.design);
  // The plug-in depends only on past data, so one estimate serves every
  // grid value.
  const ThetaPair plug = plug_in_estimate(config_.prior, counts_);
  std::map<double, Projection> curve_cache;

  for (auto& p : processes_) {
    if (p.rejected && !config_.track_instantaneous) continue;
    if (p.corner) {
      if (impossible_under(*p.corner, block)) p.log_e = kInf;
    } else if (std::holds_alternative<NullSpec::Line>(p.null.variant())) {
      const auto& line = std::get<NullSpec::Line>(p.null.variant());
      const Projection proj = project_line(line.s, line.c, plug, config_.design);
      if (!proj.interior_hit) p.log_e += block_evalue(plug, proj.theta_circ, block);
    } else {
      const auto boundary = log_odds_boundary(p.null, plug);
      if (boundary) {
        auto it = curve_cache.find(*boundary);
        if (it == curve_cache.end()) {
          it = curve_cache.emplace(*boundary, project_log_odds_curve(*boundary, plug, config_.design))
                   .first;
        }
        p.log_e += block_evalue(plug, it->second.theta_circ, block);
      }
    }
    if (p.log_e >= threshold_) p.rejected = true;
  }
  counts_.add(block);
  ++m_;
}

bool ConfSeqState::rejected(std::size_t i) const {
  // A value shared by both log odds families survives if either keeps it.
  for (std::size_t k : by_grid_.at(i)) {
    if (!processes_[k].rejected) return false;
  }
  return true;
}

bool ConfSeqState::instantaneous_member(std::size_t i) const {
  for (std::size_t k : by_grid_.at(i)) {
    if (processes_[k].log_e < threshold_) return true;
  }
  return false;
}

std::vector<double> ConfSeqState::current_set() const {
  std::vector<double> out;
  for (std::size_t i = 0; i < config_.grid.size(); ++i) {
    if (!rejected(i)) out.push_back(config_.grid[i]);
  }
  return out;
}

ConfInterval ConfSeqState::current_interval() const { return hull(current_set()); }

std::vector<double> ConfSeqState::instantaneous_set() const {
  if (m_ > 0 && !config_.track_instantaneous) {
    throw std::logic_error("instantaneous set requested without track_instantaneous");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < config_.grid.size(); ++i) {
    if (instantaneous_member(i)) out.push_back(config_.grid[i]);
  }
  return out;
}

ConfInterval ConfSeqState::instantaneous_interval() const { return hull(instantaneous_set()); }

std::size_t ConfSeqState::alive_count() const {
  std::size_t n = 0;
  for (std::size_t i = 0; i < config_.grid.size(); ++i) n += rejected(i) ? 0 : 1;
  return n;
}

std::vector<double> ConfSeqState::family_set(Family family) const {
  std::vector<double> out;
  for (const auto& p : processes_) {
    if (p.family == family && !p.rejected) out.push_back(config_.grid[p.grid_index]);
  }
  return out;
}

EProcessState ConfSeqState::process_state(std::size_t k) const {
  const auto& p = processes_.at(k);
  if (p.corner) throw std::logic_error("process_state: corner nulls have no e-process state");
  return EProcessState(EProcessConfig{config_.design, p.null, config_.prior}, counts_, p.log_e, m_);
}

ConfSeqState update(ConfSeqState state, const Block& block) {
  state.advance(block);
  return state;
}

std::string trace_header() { return "m,effect,lower,upper,empty,n_alive"; }

std::string trace_row(const ConfSeqState& state) {
  const ConfInterval ci = state.current_interval();
  std::ostringstream os;
  os << state.m() << ',' << to_string(state.config().effect) << ','
     << (ci.empty ? "nan" : format_double(ci.lower)) << ','
     << (ci.empty ? "nan" : format_double(ci.upper)) << ',' << (ci.empty ? 1 : 0) << ','
     << state.alive_count();
  return os.str();
}

std::string point_header() { return "m,delta,family,log_e,rejected"; }

std::string point_rows(const ConfSeqState& state) {
  std::ostringstream os;
  for (const auto& p : state.processes()) {
    os << state.m() << ',' << format_double(state.grid()[p.grid_index]) << ','
       << to_string(p.family) << ',' << format_double(p.log_e) << ',' << (p.rejected ? 1 : 0)
       << '\n';
  }
  return os.str();
}

}  // namespace avcs
