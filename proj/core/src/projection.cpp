#include "avcs/projection.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace avcs {

namespace {

constexpr double kGolden = 0.6180339887498948482;  // (sqrt(5) - 1) / 2
constexpr double kCurveEdge = 1e-9;
constexpr int kBracketPoints = 33;
constexpr double kGoldenTol = 1e-10;

void require_interior(const ThetaPair& star, const char* what) {
  if (!star.interior()) {
    std::ostringstream os;
    os << what << ": alternative (" << star.a() << ", " << star.b()
       << ") must lie in the interior of [0,1]^2";
    throw std::domain_error(os.str());
  }
}

// d/dtheta of d(p || theta).
double kl_slope(double p, double theta) { return -p / theta + (1.0 - p) / (1.0 - theta); }

Projection make(const ThetaPair& star, const ThetaPair& circ, const BlockDesign& design,
                bool hit) {
  return Projection{circ, hit ? 0.0 : kl_block(star, circ, design), hit};
}

Projection member(const ThetaPair& star) { return Projection{star, 0.0, true}; }

// Bisection on an increasing function over the open interval (lo, hi),
// evaluating only strictly inside. Returns the point with the smaller |f|.
template <class F>
double bisect_increasing(F&& f, double lo, double hi, const char* what) {
  const double lo0 = lo;
  const double hi0 = hi;
  double f_lo = -kInf;
  double f_hi = kInf;
  for (int iter = 0; iter < 2000; ++iter) {
    const double mid = lo + 0.5 * (hi - lo);
    if (!(mid > lo && mid < hi)) break;
    const double fm = f(mid);
    if (std::isnan(fm)) {
      // Only possible where two infinite terms meet at an end of the segment.
      if (mid - lo0 < hi0 - mid) {
        lo = mid;
      } else {
        hi = mid;
      }
      continue;
    }
    if (fm < 0.0) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
      f_hi = fm;
    }
  }
  if (lo == lo0 || hi == hi0) {
    std::ostringstream os;
    os << what << ": no sign change of the first-order condition on (" << lo0 << ", " << hi0
       << "); final bracket (" << lo << ", " << hi << ")";
    throw ProjectionError(os.str());
  }
  return std::abs(f_lo) <= std::abs(f_hi) ? lo : hi;
}

}  // namespace

double line_first_order_residual(double c, const ThetaPair& star, const ThetaPair& circ,
                                 const BlockDesign& design) {
  return static_cast<double>(design.n_a()) * kl_slope(star.a(), circ.a()) +
         static_cast<double>(design.n_b()) * c * kl_slope(star.b(), circ.b());
}

Projection project_equality(const ThetaPair& star, const BlockDesign& design) {
  require_interior(star, "project_equality");
  if (star.a() == star.b()) return member(star);
  const double n = static_cast<double>(design.n());
  const double theta = (static_cast<double>(design.n_a()) * star.a() +
                        static_cast<double>(design.n_b()) * star.b()) /
                       n;
  return make(star, ThetaPair(theta, theta), design, false);
}

Projection project_line(double s, double c, const ThetaPair& star, const BlockDesign& design) {
  require_interior(star, "project_line");
  const LineSegment seg = interior_segment(s, c);
  if (seg.empty()) {
    throw std::invalid_argument("project_line: line misses the interior of [0,1]^2");
  }
  if (star.b() == s + c * star.a()) return member(star);
  if (c == 0.0) return make(star, ThetaPair(star.a(), s), design, false);

  const double na = static_cast<double>(design.n_a());
  const double nb = static_cast<double>(design.n_b());
  auto foc = [&](double ta) {
    const double tb = s + c * ta;
    return na * kl_slope(star.a(), ta) + nb * c * kl_slope(star.b(), tb);
  };
  const double ta = bisect_increasing(foc, seg.lo, seg.hi, "project_line");
  const double tb = s + c * ta;
  if (!(ta > 0.0 && ta < 1.0 && tb > 0.0 && tb < 1.0)) {
    std::ostringstream os;
    os << "project_line: root (" << ta << ", " << tb << ") left the open unit square";
    throw ProjectionError(os.str());
  }
  return make(star, ThetaPair(ta, tb), design, false);
}

Projection project_halfplane(const NullSpec& null, const ThetaPair& star,
                             const BlockDesign& design) {
  require_interior(star, "project_halfplane");
  if (const auto* le = std::get_if<NullSpec::HalfPlaneLE>(&null.variant())) {
    if (membership(null, star)) return member(star);
    return project_line(le->s, le->c, star, design);
  }
  if (const auto* ge = std::get_if<NullSpec::HalfPlaneGE>(&null.variant())) {
    if (membership(null, star)) return member(star);
    return project_line(ge->s, ge->c, star, design);
  }
  throw std::invalid_argument("project_halfplane: null is not a half-plane");
}

Projection project_log_odds_curve(double delta, const ThetaPair& star, const BlockDesign& design) {
  require_interior(star, "project_log_odds_curve");
  if (delta == 0.0) return project_equality(star, design);

  auto curve_b = [delta](double ta) { return sigmoid(logit(ta) + delta); };
  auto phi = [&](double ta) { return kl_block(star, ThetaPair(ta, curve_b(ta)), design); };

  // Coarse scan, uniform in logit(theta_a), for a three-point bracket.
  const double t_lo = logit(kCurveEdge);
  const double t_hi = logit(1.0 - kCurveEdge);
  std::array<double, kBracketPoints> xs{};
  std::array<double, kBracketPoints> fs{};
  int best = 0;
  for (int i = 0; i < kBracketPoints; ++i) {
    const double t = t_lo + (t_hi - t_lo) * static_cast<double>(i) / (kBracketPoints - 1);
    xs[i] = sigmoid(t);
    fs[i] = phi(xs[i]);
    if (fs[i] < fs[best]) best = i;
  }
  const double bracket_lo = xs[std::max(best - 1, 0)];
  const double bracket_hi = xs[std::min(best + 1, kBracketPoints - 1)];

  // Golden-section on theta_a.
  double a = bracket_lo;
  double b = bracket_hi;
  double x1 = b - kGolden * (b - a);
  double x2 = a + kGolden * (b - a);
  double f1 = phi(x1);
  double f2 = phi(x2);
  while (b - a > kGoldenTol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kGolden * (b - a);
      f1 = phi(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kGolden * (b - a);
      f2 = phi(x2);
    }
  }

  // Near the minimum phi is flat to within rounding, which caps golden-section
  // at about sqrt(eps). The slope along the curve in logit coordinates,
  //   n_a (sigmoid(t) - a*) + n_b (sigmoid(t + delta) - b*),
  // is strictly increasing, so bisect its sign to full precision.
  const double na = static_cast<double>(design.n_a());
  const double nb = static_cast<double>(design.n_b());
  auto slope = [&](double t) {
    return na * (sigmoid(t) - star.a()) + nb * (sigmoid(t + delta) - star.b());
  };
  const double pad = 1e-6;
  double lo_t = logit(std::max(a - pad, bracket_lo));
  double hi_t = logit(std::min(b + pad, bracket_hi));
  if (!(slope(lo_t) < 0.0 && slope(hi_t) > 0.0)) {
    lo_t = logit(bracket_lo);
    hi_t = logit(bracket_hi);
  }
  const double t_star = bisect_increasing(slope, lo_t, hi_t, "project_log_odds_curve");
  const double ta = sigmoid(t_star);
  const double tb = sigmoid(t_star + delta);
  if (!(ta > 0.0 && ta < 1.0 && tb > 0.0 && tb < 1.0)) {
    throw ProjectionError("project_log_odds_curve: minimiser left the open unit square");
  }
  const ThetaPair circ(ta, tb);
  const double kl = kl_block(star, circ, design);
  if (kl > phi(bracket_lo) || kl > phi(bracket_hi)) {
    std::ostringstream os;
    os.precision(17);
    os << "project_log_odds_curve: minimiser does not beat its bracket; delta=" << delta
       << " star=(" << star.a() << ", " << star.b() << ") bracket=[" << bracket_lo << ", "
       << bracket_hi << "] theta_a=" << ta << " kl=" << kl;
    throw ProjectionError(os.str());
  }
  return Projection{circ, kl, false};
}

std::optional<double> log_odds_boundary(const NullSpec& null, const ThetaPair& star) {
  if (membership(null, star)) return std::nullopt;
  if (const auto* le = std::get_if<NullSpec::LogOddsLE>(&null.variant())) return le->delta;
  if (const auto* ge = std::get_if<NullSpec::LogOddsGE>(&null.variant())) return ge->delta;
  if (const auto* band = std::get_if<NullSpec::LogOddsBand>(&null.variant())) {
    return log_odds_ratio(star) > band->hi ? band->hi : band->lo;
  }
  throw std::invalid_argument("log_odds_boundary: null is not a log-odds set");
}

Projection project_log_odds(const NullSpec& null, const ThetaPair& star,
                            const BlockDesign& design) {
  require_interior(star, "project_log_odds");
  const auto boundary = log_odds_boundary(null, star);
  if (!boundary) return member(star);
  return project_log_odds_curve(*boundary, star, design);
}

Projection project(const NullSpec& null, const ThetaPair& star, const BlockDesign& design) {
  struct Visitor {
    const NullSpec& null;
    const ThetaPair& star;
    const BlockDesign& design;
    Projection operator()(const NullSpec::Equality&) const {
      return project_equality(star, design);
    }
    Projection operator()(const NullSpec::Line& l) const {
      return project_line(l.s, l.c, star, design);
    }
    Projection operator()(const NullSpec::HalfPlaneLE&) const {
      return project_halfplane(null, star, design);
    }
    Projection operator()(const NullSpec::HalfPlaneGE&) const {
      return project_halfplane(null, star, design);
    }
    Projection operator()(const NullSpec::LogOddsLE&) const {
      return project_log_odds(null, star, design);
    }
    Projection operator()(const NullSpec::LogOddsGE&) const {
      return project_log_odds(null, star, design);
    }
    Projection operator()(const NullSpec::LogOddsBand&) const {
      return project_log_odds(null, star, design);
    }
  };
  return std::visit(Visitor{null, star, design}, null.variant());
}

}  // namespace avcs
