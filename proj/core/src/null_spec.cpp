#include "avcs/null_spec.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace avcs {

namespace {

void require_line(double s, double c, const char* what) {
  if (!std::isfinite(s) || !std::isfinite(c)) {
    throw std::invalid_argument(std::string(what) + ": s and c must be finite");
  }
  if (interior_segment(s, c).empty()) {
    std::ostringstream os;
    os << what << ": line theta_b = " << s << " + " << c
       << " * theta_a does not pass through the interior of [0,1]^2";
    throw std::invalid_argument(os.str());
  }
}

void require_finite(double delta, const char* what) {
  if (!std::isfinite(delta)) {
    throw std::invalid_argument(std::string(what) + ": delta must be finite");
  }
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = text.find(sep, start);
    out.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_double(std::string_view tok, std::string_view whole) {
  double v = 0.0;
  const auto* first = tok.data();
  const auto* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw std::invalid_argument("malformed number '" + std::string(tok) + "' in null spec '" +
                                std::string(whole) + "'");
  }
  return v;
}

bool in_half_plane(double s, double c, const ThetaPair& t, bool le) {
  const double rhs = s + c * t.a();
  return le ? t.b() <= rhs : t.b() >= rhs;
}

}  // namespace

LineSegment interior_segment(double s, double c) noexcept {
  double lo = 0.0;
  double hi = 1.0;
  if (c > 0.0) {
    lo = std::max(lo, -s / c);
    hi = std::min(hi, (1.0 - s) / c);
  } else if (c < 0.0) {
    lo = std::max(lo, (1.0 - s) / c);
    hi = std::min(hi, -s / c);
  } else if (!(s > 0.0 && s < 1.0)) {
    return {1.0, 0.0};
  }
  return {lo, hi};
}

NullSpec NullSpec::equality() { return NullSpec(Equality{}); }

NullSpec NullSpec::line(double s, double c) {
  require_line(s, c, "Line");
  return NullSpec(Line{s, c});
}

NullSpec NullSpec::half_plane_le(double s, double c) {
  require_line(s, c, "HalfPlaneLE");
  return NullSpec(HalfPlaneLE{s, c});
}

NullSpec NullSpec::half_plane_ge(double s, double c) {
  require_line(s, c, "HalfPlaneGE");
  return NullSpec(HalfPlaneGE{s, c});
}

NullSpec NullSpec::log_odds_le(double delta) {
  require_finite(delta, "LogOddsLE");
  if (delta < 0.0) {
    throw std::invalid_argument("LogOddsLE: {log OR <= delta} is convex only for delta >= 0, got " +
                                fmt(delta));
  }
  return NullSpec(LogOddsLE{delta});
}

NullSpec NullSpec::log_odds_ge(double delta) {
  require_finite(delta, "LogOddsGE");
  if (delta > 0.0) {
    throw std::invalid_argument("LogOddsGE: {log OR >= delta} is convex only for delta <= 0, got " +
                                fmt(delta));
  }
  return NullSpec(LogOddsGE{delta});
}

NullSpec NullSpec::log_odds_band(double lo, double hi) {
  require_finite(lo, "LogOddsBand");
  require_finite(hi, "LogOddsBand");
  if (!(lo <= 0.0 && 0.0 <= hi)) {
    throw std::invalid_argument("LogOddsBand: requires lo <= 0 <= hi, got lo=" + fmt(lo) +
                                " hi=" + fmt(hi));
  }
  return NullSpec(LogOddsBand{lo, hi});
}

std::string NullSpec::to_string() const {
  struct Visitor {
    std::string operator()(const Equality&) const { return "equality"; }
    std::string operator()(const Line& l) const { return "line:" + fmt(l.s) + ":" + fmt(l.c); }
    std::string operator()(const HalfPlaneLE& h) const { return "le:" + fmt(h.s) + ":" + fmt(h.c); }
    std::string operator()(const HalfPlaneGE& h) const { return "ge:" + fmt(h.s) + ":" + fmt(h.c); }
    std::string operator()(const LogOddsLE& l) const { return "lor-le:" + fmt(l.delta); }
    std::string operator()(const LogOddsGE& l) const { return "lor-ge:" + fmt(l.delta); }
    std::string operator()(const LogOddsBand& b) const {
      return "lor-band:" + fmt(b.lo) + ":" + fmt(b.hi);
    }
  };
  return std::visit(Visitor{}, v_);
}

NullSpec NullSpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  const auto kind = parts.front();
  auto expect = [&](std::size_t n) {
    if (parts.size() != n + 1) {
      throw std::invalid_argument("null spec '" + std::string(text) + "' expects " +
                                  std::to_string(n) + " parameter(s)");
    }
  };
  auto num = [&](std::size_t i) { return parse_double(parts[i], text); };
  if (kind == "equality") {
    expect(0);
    return equality();
  }
  if (kind == "line") {
    expect(2);
    return line(num(1), num(2));
  }
  if (kind == "le") {
    expect(2);
    return half_plane_le(num(1), num(2));
  }
  if (kind == "ge") {
    expect(2);
    return half_plane_ge(num(1), num(2));
  }
  if (kind == "lor-le") {
    expect(1);
    return log_odds_le(num(1));
  }
  if (kind == "lor-ge") {
    expect(1);
    return log_odds_ge(num(1));
  }
  if (kind == "lor-band") {
    expect(2);
    return log_odds_band(num(1), num(2));
  }
  throw std::invalid_argument("unknown null spec kind '" + std::string(kind) + "'");
}

bool membership(const NullSpec& null, const ThetaPair& theta) {
  struct Visitor {
    const ThetaPair& t;
    bool operator()(const NullSpec::Equality&) const { return t.a() == t.b(); }
    bool operator()(const NullSpec::Line& l) const { return t.b() == l.s + l.c * t.a(); }
    bool operator()(const NullSpec::HalfPlaneLE& h) const { return in_half_plane(h.s, h.c, t, true); }
    bool operator()(const NullSpec::HalfPlaneGE& h) const {
      return in_half_plane(h.s, h.c, t, false);
    }
    bool operator()(const NullSpec::LogOddsLE& l) const {
      const double r = log_odds_ratio(t);
      return std::isnan(r) || r <= l.delta;
    }
    bool operator()(const NullSpec::LogOddsGE& l) const {
      const double r = log_odds_ratio(t);
      return std::isnan(r) || r >= l.delta;
    }
    bool operator()(const NullSpec::LogOddsBand& b) const {
      const double r = log_odds_ratio(t);
      return std::isnan(r) || (r >= b.lo && r <= b.hi);
    }
  };
  return std::visit(Visitor{theta}, null.variant());
}

}  // namespace avcs
