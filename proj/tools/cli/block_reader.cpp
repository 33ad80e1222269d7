#include "block_reader.hpp"

#include <algorithm>
#include <cctype>

#include "json.hpp"

namespace avcs::cli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Group parse_group(std::string_view g, std::int64_t line) {
  if (g == "a" || g == "A") return Group::A;
  if (g == "b" || g == "B") return Group::B;
  throw InputError("unknown group", line, "'" + std::string(g) + "' (expected a or b)");
}

std::uint8_t parse_outcome(std::string_view y, std::int64_t line) {
  if (y == "0") return 0;
  if (y == "1") return 1;
  throw InputError("invalid outcome", line, "'" + std::string(y) + "' (expected 0 or 1)");
}

Observation parse_json(std::string_view text, std::int64_t line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error&) {
    throw InputError("malformed JSON row", line);
  }
  if (!j.is_object() || !j.contains("g") || !j.contains("y")) {
    throw InputError("malformed JSON row", line, "needs fields \"g\" and \"y\"");
  }
  const auto& g = j["g"];
  const auto& y = j["y"];
  if (!g.is_string()) throw InputError("malformed JSON row", line, "field \"g\" must be a string");
  Observation obs{parse_group(g.get<std::string>(), line), 0};
  if (y.is_boolean()) {
    obs.outcome = y.get<bool>() ? 1 : 0;
  } else if (y.is_number_integer() && (y.get<std::int64_t>() == 0 || y.get<std::int64_t>() == 1)) {
    obs.outcome = static_cast<std::uint8_t>(y.get<std::int64_t>());
  } else {
    throw InputError("invalid outcome", line, "field \"y\" must be 0 or 1");
  }
  return obs;
}

}  // namespace

std::optional<Observation> parse_row(std::string_view raw, std::int64_t line_number) {
  const auto line = trim(raw);
  if (line.empty() || line.front() == '#') return std::nullopt;
  if (line.front() == '{') return parse_json(line, line_number);
  const auto comma = line.find(',');
  if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
    throw InputError("malformed row", line_number,
                     "'" + std::string(line) + "' (expected group,outcome)");
  }
  const auto g = trim(line.substr(0, comma));
  const auto y = trim(line.substr(comma + 1));
  if (line_number == 1 && g == "group" && y == "outcome") return std::nullopt;
  return Observation{parse_group(g, line_number), parse_outcome(y, line_number)};
}

BlockAssembler::BlockAssembler(BlockDesign design, std::int64_t lookahead)
    : design_(design), lookahead_(lookahead) {
  if (lookahead < design.n()) {
    throw std::invalid_argument("lookahead must be at least n_a + n_b");
  }
}

std::optional<Block> BlockAssembler::push(const Observation& obs, std::int64_t line_number) {
  (obs.group == Group::A ? a_ : b_).push_back(obs.outcome);
  const auto na = static_cast<std::size_t>(design_.n_a());
  const auto nb = static_cast<std::size_t>(design_.n_b());
  if (a_.size() >= na && b_.size() >= nb) {
    Block block;
    block.ys_a.assign(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(na));
    block.ys_b.assign(b_.begin(), b_.begin() + static_cast<std::ptrdiff_t>(nb));
    a_.erase(a_.begin(), a_.begin() + static_cast<std::ptrdiff_t>(na));
    b_.erase(b_.begin(), b_.begin() + static_cast<std::ptrdiff_t>(nb));
    return block;
  }
  if (static_cast<std::int64_t>(a_.size() + b_.size()) > lookahead_) {
    throw InputError("cannot complete a block", line_number,
                     "lookahead of " + std::to_string(lookahead_) + " rows exceeded (" +
                         std::to_string(a_.size()) + " group-a and " + std::to_string(b_.size()) +
                         " group-b rows pending)");
  }
  return std::nullopt;
}

}  // namespace avcs::cli
