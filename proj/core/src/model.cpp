#include "avcs/model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace avcs {

namespace {

bool is_probability(double p) { return std::isfinite(p) && p >= 0.0 && p <= 1.0; }

}  // namespace

ThetaPair::ThetaPair(double theta_a, double theta_b) : a_(theta_a), b_(theta_b) {
  if (!is_probability(theta_a) || !is_probability(theta_b)) {
    std::ostringstream os;
    os << "ThetaPair components must lie in [0,1], got (" << theta_a << ", " << theta_b << ")";
    throw std::domain_error(os.str());
  }
}

BlockDesign::BlockDesign(std::int64_t n_a, std::int64_t n_b) : n_a_(n_a), n_b_(n_b) {
  if (n_a < 1 || n_b < 1) {
    std::ostringstream os;
    os << "BlockDesign requires n_a >= 1 and n_b >= 1, got n_a=" << n_a << " n_b=" << n_b;
    throw std::invalid_argument(os.str());
  }
}

void validate_block(const Block& block, const BlockDesign& design) {
  if (static_cast<std::int64_t>(block.ys_a.size()) != design.n_a() ||
      static_cast<std::int64_t>(block.ys_b.size()) != design.n_b()) {
    std::ostringstream os;
    os << "block has " << block.ys_a.size() << "+" << block.ys_b.size()
       << " outcomes, design expects " << design.n_a() << "+" << design.n_b();
    throw std::invalid_argument(os.str());
  }
  for (auto y : block.ys_a) {
    if (y > 1) throw std::invalid_argument("block outcome must be 0 or 1");
  }
  for (auto y : block.ys_b) {
    if (y > 1) throw std::invalid_argument("block outcome must be 0 or 1");
  }
}

void GroupCounts::add(const Block& block) {
  for (auto y : block.ys_a) ones_a += y;
  for (auto y : block.ys_b) ones_b += y;
  trials_a += static_cast<std::int64_t>(block.ys_a.size());
  trials_b += static_cast<std::int64_t>(block.ys_b.size());
}

GroupCounts& GroupCounts::operator+=(const GroupCounts& other) noexcept {
  ones_a += other.ones_a;
  trials_a += other.trials_a;
  ones_b += other.ones_b;
  trials_b += other.trials_b;
  return *this;
}

double bern_log_pmf(double theta, int y) {
  if (!is_probability(theta)) {
    throw std::domain_error("bern_log_pmf: theta outside [0,1]");
  }
  if (y != 0 && y != 1) throw std::domain_error("bern_log_pmf: outcome must be 0 or 1");
  return y == 1 ? std::log(theta) : std::log1p(-theta);
}

double bernoulli_kl(double p, double q) {
  if (!is_probability(p) || !is_probability(q)) {
    throw std::domain_error("bernoulli_kl: argument outside [0,1]");
  }
  // 0 log 0 = 0; p log(p/0) = +inf for p > 0.
  double kl = 0.0;
  if (p > 0.0) {
    if (q == 0.0) return kInf;
    kl += p * std::log(p / q);
  }
  if (p < 1.0) {
    if (q == 1.0) return kInf;
    kl += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  }
  return kl < 0.0 ? 0.0 : kl;
}

double kl_block(const ThetaPair& star, const ThetaPair& theta, const BlockDesign& design) {
  const double da = bernoulli_kl(star.a(), theta.a());
  const double db = bernoulli_kl(star.b(), theta.b());
  if (std::isinf(da) || std::isinf(db)) return kInf;
  return static_cast<double>(design.n_a()) * da + static_cast<double>(design.n_b()) * db;
}

double kl_single(const ThetaPair& star, const ThetaPair& theta, const BlockDesign& design) {
  const double n = static_cast<double>(design.n());
  return kl_block(star, theta, design) / n;
}

double logit(double p) noexcept { return std::log(p) - std::log1p(-p); }

double sigmoid(double x) noexcept {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double log_odds_ratio(const ThetaPair& theta) noexcept {
  const double a = theta.a();
  const double b = theta.b();
  // Limits on the edges: the ratio goes to +inf when theta_a -> 0 or
  // theta_b -> 1, to 0 when theta_a -> 1 or theta_b -> 0.
  const bool up = (a == 0.0) || (b == 1.0);
  const bool down = (a == 1.0) || (b == 0.0);
  if (up && down) {
    if ((a == 0.0 && b == 1.0)) return kInf;
    if ((a == 1.0 && b == 0.0)) return -kInf;
    return std::numeric_limits<double>::quiet_NaN();
  }
  if (up) return kInf;
  if (down) return -kInf;
  return (std::log(b) - std::log1p(-b)) - (std::log(a) - std::log1p(-a));
}

std::string to_string(Group g) { return g == Group::A ? "a" : "b"; }

}  // namespace avcs
