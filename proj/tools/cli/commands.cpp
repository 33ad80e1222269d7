#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "avcs/format.hpp"
#include "avcs/snapshot.hpp"
#include "block_reader.hpp"

namespace avcs::cli {

namespace {

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path != "-") {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
      os_ = &file_;
    }
  }
  std::ostream& operator*() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

class Input {
 public:
  Input(const std::string& path, std::istream& fallback) : is_(&fallback) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::runtime_error("cannot open input file '" + path + "'");
      is_ = &file_;
    }
  }
  std::istream& operator*() { return *is_; }

 private:
  std::ifstream file_;
  std::istream* is_;
};

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open snapshot '" + path + "'");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text)) throw std::runtime_error("cannot write '" + path + "'");
}

// Feeds every completed block of the input to `on_block`.
template <class OnBlock>
void for_each_block(const RunConfig& rc, const BlockDesign& design, std::istream& in,
                    std::ostream& err, OnBlock&& on_block) {
  BlockAssembler assembler(design, rc.lookahead);
  std::string line;
  std::int64_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const auto obs = parse_row(line, line_number);
    if (!obs) continue;
    if (auto block = assembler.push(*obs, line_number)) on_block(*block);
  }
  if (assembler.pending_a() + assembler.pending_b() > 0) {
    err << "warning: incomplete trailing block excluded (" << assembler.pending_a() << " of "
        << design.n_a() << " group-a and " << assembler.pending_b() << " of " << design.n_b()
        << " group-b rows)\n";
  }
}

int analyze_test(const RunConfig& rc, std::istream& in, std::ostream& out, std::ostream& err) {
  const EProcessConfig config{resolve_design(rc), resolve_null(rc), resolve_prior(rc)};
  EProcessState state(config);
  if (!rc.resume.empty()) {
    state = from_snapshot(read_file(rc.resume));
    if (!(state.config() == config)) {
      throw ConfigError("--resume: snapshot was taken under a different configuration (" +
                        canonical_config(state.config()) + ")");
    }
  }
  std::int64_t first_reject = -1;
  auto row = [&] {
    if (first_reject < 0 && decision(state, rc.alpha) == Decision::Reject) first_reject = state.m();
    out << state.m() << ',' << format_double(state.log_e()) << ','
        << (first_reject >= 0 ? "reject" : "continue") << '\n';
  };
  out << "m,log_e,decision\n";
  row();
  for_each_block(rc, config.design, in, err, [&](const Block& block) {
    state = update(state, block);
    row();
  });
  if (!rc.save_snapshot.empty()) write_file(rc.save_snapshot, to_snapshot(state));
  out << "# decision=" << (first_reject >= 0 ? "reject" : "continue") << " m=" << state.m()
      << " log_e=" << format_double(state.log_e());
  if (first_reject >= 0) out << " first_reject_m=" << first_reject;
  out << '\n';
  return first_reject >= 0 ? kExitReject : kExitOk;
}

int analyze_confseq(const RunConfig& rc, std::istream& in, std::ostream& out, std::ostream& err) {
  if (!rc.resume.empty() || !rc.save_snapshot.empty()) {
    throw ConfigError("--resume/--save-snapshot: only available in test mode");
  }
  ConfSeqConfig config;
  config.effect = resolve_effect(rc);
  config.alpha = rc.alpha;
  config.grid = resolve_grid(rc);
  config.prior = resolve_prior(rc);
  config.design = resolve_design(rc);
  config.log_odds_families = resolve_families(rc);
  std::optional<ConfSeqState> state;
  try {
    state.emplace(config);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("--grid: ") + e.what());
  }

  std::optional<Output> points;
  if (!rc.points.empty()) {
    points.emplace(rc.points, out);
    **points << point_header() << '\n' << point_rows(*state);
  }
  out << trace_header() << '\n' << trace_row(*state) << '\n';
  for_each_block(rc, config.design, in, err, [&](const Block& block) {
    state->advance(block);
    out << trace_row(*state) << '\n';
    if (points) **points << point_rows(*state);
  });
  const auto ci = state->current_interval();
  out << "# interval=";
  if (ci.empty) {
    out << "empty";
  } else {
    out << '[' << format_double(ci.lower) << ',' << format_double(ci.upper) << ']';
  }
  out << " m=" << state->m() << " n_alive=" << state->alive_count() << '\n';
  return kExitOk;
}

SimConfig sim_config(const RunConfig& rc) {
  SimConfig sc;
  sc.star = resolve_star(rc);
  sc.design = resolve_design(rc);
  if (rc.m_max < 1) throw ConfigError("--m-max: must be >= 1");
  sc.m_max = rc.m_max;
  if (rc.streams && *rc.streams < 1) throw ConfigError("--streams: must be >= 1");
  sc.seed = rc.seed;
  check_alpha(rc);
  sc.alpha = rc.alpha;
  sc.prior = resolve_prior(rc);
  sc.threads = rc.threads;
  return sc;
}

}  // namespace

int analyze(const RunConfig& rc, std::istream& in, std::ostream& out_fallback, std::ostream& err) {
  check_alpha(rc);
  if (rc.lookahead < rc.n_a + rc.n_b) throw ConfigError("--lookahead: must be at least na + nb");
  Input input(rc.input, in);
  Output out(rc.output, out_fallback);
  return rc.effect.empty() ? analyze_test(rc, *input, *out, err)
                           : analyze_confseq(rc, *input, *out, err);
}

int project(const RunConfig& rc, std::ostream& out) {
  const auto null = resolve_null(rc);
  const auto star = resolve_star(rc);
  if (!star.interior()) throw ConfigError("--theta-a/--theta-b: the alternative must lie in (0,1)^2");
  const auto p = avcs::project(null, star, resolve_design(rc));
  out << "theta_a=" << format_double(p.theta_circ.a()) << '\n'
      << "theta_b=" << format_double(p.theta_circ.b()) << '\n'
      << "kl=" << format_double(p.kl_value) << '\n'
      << "interior_hit=" << (p.interior_hit ? "true" : "false") << '\n';
  return kExitOk;
}

int simulate(const RunConfig& rc, std::ostream& out_fallback) {
  SimConfig sc = sim_config(rc);
  std::string line;
  if (rc.experiment == "type1") {
    sc.n_streams = rc.streams.value_or(2000);
    sc.null = resolve_null(rc);
    if (!membership(sc.null, sc.star)) {
      throw ConfigError("--theta-a/--theta-b: type1 needs an alternative inside the null " +
                        sc.null.to_string());
    }
    line = summary_json(sc, run_type1(sc));
  } else if (rc.experiment == "coverage") {
    sc.n_streams = rc.streams.value_or(1000);
    sc.effect = rc.effect.empty() ? EffectSize::RiskDifference : resolve_effect(rc);
    sc.grid = resolve_grid(rc);
    sc.log_odds_families = resolve_families(rc);
    try {
      line = summary_json(sc, run_coverage(sc, rc.instantaneous));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("--grid: ") + e.what());
    }
  } else {
    throw ConfigError("experiment: expected type1 or coverage, got '" + rc.experiment + "'");
  }
  Output out(rc.output, out_fallback);
  *out << line << '\n';
  return kExitOk;
}

int trace(const RunConfig& rc, std::ostream& out) {
  Scenario scenario;
  try {
    scenario = parse_scenario(rc.scenario);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("scenario: ") + e.what());
  }
  for (const auto& path : figure_traces(scenario, rc.seed, rc.out_dir)) {
    out << path.string() << '\n';
  }
  return kExitOk;
}

}  // namespace avcs::cli
