#include "app.hpp"

#include <algorithm>
#include <iostream>

#include "CLI11.hpp"
#include "avcs/projection.hpp"
#include "block_reader.hpp"
#include "commands.hpp"

namespace avcs::cli {

namespace {

void add_options(CLI::App& app, RunConfig& rc) {
  app.add_option("--na", rc.n_a, "Group-a observations per block")->capture_default_str();
  app.add_option("--nb", rc.n_b, "Group-b observations per block")->capture_default_str();
  app.add_option("--alpha", rc.alpha, "Significance level in (0,1)")->capture_default_str();
  app.add_option("--gamma", rc.gamma, "Symmetric beta prior parameter")->capture_default_str();
  app.add_option("--prior", rc.prior, "Beta prior: alpha_a beta_a alpha_b beta_b")
      ->expected(4);

  app.add_option("--null", rc.null_kind,
                 "equality|line|le|ge|lor-le|lor-ge|lor-band, or a canonical form such as "
                 "line:0.1:1")
      ->capture_default_str();
  app.add_option("--s", rc.s, "Line intercept (theta_b = s + c theta_a)")->capture_default_str();
  app.add_option("--c", rc.c, "Line slope")->capture_default_str();
  app.add_option("--delta", rc.delta, "Log odds ratio bound for lor-le / lor-ge")
      ->capture_default_str();
  app.add_option("--delta-lo", rc.delta_lo, "Lower bound for lor-band")->capture_default_str();
  app.add_option("--delta-hi", rc.delta_hi, "Upper bound for lor-band")->capture_default_str();

  app.add_option("--effect", rc.effect, "rd|rr|lor; selects confidence-sequence mode in analyze");
  app.add_option("--lor-families", rc.log_odds_families, "banded|one-sided")
      ->capture_default_str();
  app.add_option("--grid-spacing", rc.grid_spacing, "linear|log")->capture_default_str();
  app.add_option("--grid-lo", rc.grid_lo, "Smallest grid value");
  app.add_option("--grid-hi", rc.grid_hi, "Largest grid value");
  app.add_option("--grid-step", rc.grid_step, "Step of a linear grid");
  app.add_option("--grid-count", rc.grid_count, "Number of points of a log grid");

  app.add_option("--theta-a", rc.theta_a, "Alternative theta_a")->capture_default_str();
  app.add_option("--theta-b", rc.theta_b, "Alternative theta_b")->capture_default_str();

  app.add_option("-i,--input", rc.input, "Input file, - for stdin")->capture_default_str();
  app.add_option("-o,--output", rc.output, "Output file, - for stdout")->capture_default_str();
  app.add_option("--points", rc.points, "Per-grid-point log e-values (analyze, CS mode)");
  app.add_option("--resume", rc.resume, "Start from an e-process snapshot (analyze, test mode)");
  app.add_option("--save-snapshot", rc.save_snapshot, "Write the final e-process snapshot");
  app.add_option("--lookahead", rc.lookahead, "Max rows waiting for a block to complete")
      ->capture_default_str();

  app.add_option("--seed", rc.seed, "Random seed")->capture_default_str();
  app.add_option("--streams", rc.streams, "Number of simulated streams");
  app.add_option("--m-max", rc.m_max, "Blocks per simulated stream")->capture_default_str();
  app.add_option("--threads", rc.threads, "Worker threads, 0 for all cores")
      ->capture_default_str();
  app.add_flag("--instantaneous", rc.instantaneous,
               "coverage: also check the running interval against the plain one");
  app.add_option("--out-dir", rc.out_dir, "Directory for trace files")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  RunConfig rc;
  CLI::App app{"Anytime-valid tests and confidence sequences for 2x2 tables", "avcs"};
  app.set_config("--config", "", "TOML/INI file with option defaults");
  bool print_config = false;
  app.add_flag("--print-config", print_config, "Print the resolved configuration and exit")
      ->configurable(false);
  add_options(app, rc);
  app.require_subcommand(1);

  auto* analyze_cmd = app.add_subcommand("analyze", "Test or estimate from a stream of rows");
  auto* project_cmd = app.add_subcommand("project", "Projection of an alternative onto a null");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo type-I error or coverage");
  simulate_cmd->add_option("experiment", rc.experiment, "type1|coverage")->required();
  auto* trace_cmd = app.add_subcommand("trace", "Figure traces as CSV files");
  trace_cmd->add_option("scenario", rc.scenario, "fig2|fig3|figA1")->required();
  for (auto* sub : {analyze_cmd, project_cmd, simulate_cmd, trace_cmd}) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  rc.subcommand = app.get_subcommands().front()->get_name();

  if (print_config) {
    out << app.config_to_str(true, false);
    return kExitOk;
  }

  try {
    if (rc.subcommand == "analyze") return analyze(rc, in, out, err);
    if (rc.subcommand == "project") return project(rc, out);
    if (rc.subcommand == "simulate") return simulate(rc, out);
    return trace(rc, out);
  } catch (const ProjectionError& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::logic_error& e) {
    // invalid_argument and domain_error derive from logic_error: bad options.
    if (dynamic_cast<const std::invalid_argument*>(&e) || dynamic_cast<const std::domain_error*>(&e)) {
      err << "error: " << e.what() << '\n';
      return kExitInputError;
    }
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
}

}  // namespace avcs::cli
