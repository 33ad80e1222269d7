#pragma once

#include <iosfwd>

#include "run_config.hpp"

namespace avcs::cli {

/// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInputError = 2;
inline constexpr int kExitReject = 10;

/// Reads group/outcome rows from rc.input ("-" is `in`) and reports after
/// every completed block. Test mode (no --effect) writes "m,log_e,decision"
/// rows; confidence-sequence mode writes trace_header() rows. Both start at
/// m = 0 and end with one '#' summary line. Returns kExitReject when the test
/// rejected at some block, kExitOk otherwise. Throws on bad input or options.
int analyze(const RunConfig& rc, std::istream& in, std::ostream& out, std::ostream& err);

/// Prints theta_a, theta_b, kl and interior_hit of the projection of
/// (theta_a, theta_b) onto the null, one key=value per line.
int project(const RunConfig& rc, std::ostream& out);

/// "type1" or "coverage": one JSON summary line.
int simulate(const RunConfig& rc, std::ostream& out);

/// Writes the CSV traces of a figure scenario and prints their paths.
int trace(const RunConfig& rc, std::ostream& out);

}  // namespace avcs::cli
