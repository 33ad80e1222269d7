#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "avcs/model.hpp"

namespace avcs::cli {

/// Bad input data; carries the 1-based line number it refers to. The message
/// reads "<what> at line <k>" followed by ": <detail>" when a detail is given.
class InputError : public std::runtime_error {
 public:
  InputError(const std::string& what, std::int64_t line, const std::string& detail = {})
      : std::runtime_error(what + " at line " + std::to_string(line) +
                           (detail.empty() ? "" : ": " + detail)),
        line_(line) {}
  std::int64_t line() const noexcept { return line_; }

 private:
  std::int64_t line_;
};

struct Observation {
  Group group;
  std::uint8_t outcome;
};

/// Parses one input line. Accepts CSV "group,outcome" (group a|b, outcome
/// 0|1) or a JSON object {"g":"a","y":1}. Returns nullopt for blank lines,
/// '#' comments, and a "group,outcome" header on line 1.
std::optional<Observation> parse_row(std::string_view line, std::int64_t line_number);

/// Groups an interleaved observation stream into blocks: block j takes the
/// j-th run of n_a group-a rows and n_b group-b rows in arrival order.
class BlockAssembler {
 public:
  /// `lookahead` caps the number of rows that may wait for a block to
  /// complete.
  BlockAssembler(BlockDesign design, std::int64_t lookahead);

  /// Returns the block completed by this row, if any. Throws InputError when
  /// more than `lookahead` rows are pending.
  std::optional<Block> push(const Observation& obs, std::int64_t line_number);

  std::size_t pending_a() const noexcept { return a_.size(); }
  std::size_t pending_b() const noexcept { return b_.size(); }

 private:
  BlockDesign design_;
  std::int64_t lookahead_;
  std::deque<std::uint8_t> a_;
  std::deque<std::uint8_t> b_;
};

}  // namespace avcs::cli
