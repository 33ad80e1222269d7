#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "avcs/eprocess.hpp"

namespace avcs {

/// Plain-text snapshot of an e-process so a stream can be resumed later.
///
///   # avcs e-process snapshot
///   version=1
///   n_a=<int>            n_b=<int>
///   null=<NullSpec::to_string()>
///   prior=<alpha_a>,<beta_a>,<alpha_b>,<beta_b>
///   ones_a=<int>  trials_a=<int>  ones_b=<int>  trials_b=<int>
///   m=<int>
///   log_e=<hex float, exact>
///   config_hash=<16 hex digits, FNV-1a of the canonical config>
///
/// One key per line, in this order. Unknown keys are rejected.
inline constexpr int kSnapshotVersion = 1;

std::string to_snapshot(const EProcessState& state);

/// Throws std::invalid_argument on malformed input, a version mismatch, or a
/// config hash that does not match the decoded configuration.
EProcessState from_snapshot(std::string_view text);

/// Canonical one-line form of a configuration; the snapshot hash covers it.
std::string canonical_config(const EProcessConfig& config);

std::uint64_t fnv1a64(std::string_view bytes) noexcept;

}  // namespace avcs
