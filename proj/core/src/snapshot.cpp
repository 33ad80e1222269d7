#include "avcs/snapshot.hpp"

#include <array>
#include <charconv>
#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace avcs {

namespace {

constexpr const char* kHeader = "# avcs e-process snapshot";
constexpr std::array<const char*, 12> kKeys = {"version", "n_a",    "n_b",      "null",
                                               "prior",   "ones_a", "trials_a", "ones_b",
                                               "trials_b", "m",     "log_e",    "config_hash"};

std::string exact(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x, std::chars_format::hex);
  return std::string(buf.data(), ptr);
}

std::string shortest(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

std::string hex64(std::uint64_t h) {
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf.data());
}

[[noreturn]] void fail(const std::string& why) {
  throw std::invalid_argument("snapshot: " + why);
}

std::int64_t to_int(const std::string& key, std::string_view v) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail("bad integer for " + key);
  return out;
}

double to_double(const std::string& key, std::string_view v, bool hex) {
  double out = 0.0;
  auto fmt = hex ? std::chars_format::hex : std::chars_format::general;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out, fmt);
  if (ec != std::errc() || ptr != v.data() + v.size()) fail("bad number for " + key);
  return out;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string canonical_config(const EProcessConfig& config) {
  std::ostringstream os;
  os << "n_a=" << config.design.n_a() << ";n_b=" << config.design.n_b()
     << ";null=" << config.null.to_string() << ";prior=" << shortest(config.prior.alpha_a) << ","
     << shortest(config.prior.beta_a) << "," << shortest(config.prior.alpha_b) << ","
     << shortest(config.prior.beta_b);
  return os.str();
}

std::string to_snapshot(const EProcessState& state) {
  const auto& cfg = state.config();
  const auto& c = state.counts();
  std::ostringstream os;
  os << kHeader << "\n"
     << "version=" << kSnapshotVersion << "\n"
     << "n_a=" << cfg.design.n_a() << "\n"
     << "n_b=" << cfg.design.n_b() << "\n"
     << "null=" << cfg.null.to_string() << "\n"
     << "prior=" << shortest(cfg.prior.alpha_a) << "," << shortest(cfg.prior.beta_a) << ","
     << shortest(cfg.prior.alpha_b) << "," << shortest(cfg.prior.beta_b) << "\n"
     << "ones_a=" << c.ones_a << "\n"
     << "trials_a=" << c.trials_a << "\n"
     << "ones_b=" << c.ones_b << "\n"
     << "trials_b=" << c.trials_b << "\n"
     << "m=" << state.m() << "\n"
     << "log_e=" << exact(state.log_e()) << "\n"
     << "config_hash=" << hex64(fnv1a64(canonical_config(cfg))) << "\n";
  return os.str();
}

EProcessState from_snapshot(std::string_view text) {
  std::vector<std::pair<std::string, std::string>> entries;
  std::istringstream is{std::string(text)};
  std::string line;
  bool header = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (line == kHeader) header = true;
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail("line without '=': " + line);
    entries.emplace_back(line.substr(0, eq), line.substr(eq + 1));
  }
  if (!header) fail("missing header line");
  if (entries.size() != kKeys.size()) {
    fail("expected " + std::to_string(kKeys.size()) + " keys, found " +
         std::to_string(entries.size()));
  }
  std::map<std::string, std::string> kv;
  for (std::size_t i = 0; i < kKeys.size(); ++i) {
    if (entries[i].first != kKeys[i]) {
      fail("expected key '" + std::string(kKeys[i]) + "', found '" + entries[i].first + "'");
    }
    kv[entries[i].first] = entries[i].second;
  }
  if (to_int("version", kv["version"]) != kSnapshotVersion) {
    fail("unsupported version " + kv["version"]);
  }

  EProcessConfig cfg;
  cfg.design = BlockDesign(to_int("n_a", kv["n_a"]), to_int("n_b", kv["n_b"]));
  cfg.null = NullSpec::parse(kv["null"]);
  {
    std::vector<double> p;
    std::string_view rest = kv["prior"];
    while (true) {
      const auto comma = rest.find(',');
      p.push_back(to_double("prior", rest.substr(0, comma), false));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (p.size() != 4) fail("prior needs four values");
    cfg.prior = BetaPrior{p[0], p[1], p[2], p[3]};
  }
  GroupCounts counts{to_int("ones_a", kv["ones_a"]), to_int("trials_a", kv["trials_a"]),
                     to_int("ones_b", kv["ones_b"]), to_int("trials_b", kv["trials_b"])};
  const auto m = to_int("m", kv["m"]);
  const double log_e = to_double("log_e", kv["log_e"], true);

  if (kv["config_hash"] != hex64(fnv1a64(canonical_config(cfg)))) {
    fail("config_hash does not match the decoded configuration");
  }
  return EProcessState(cfg, counts, log_e, m);
}

}  // namespace avcs
