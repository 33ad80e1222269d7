#pragma once

// Bernoulli block data model for two-group sequential inference.
//
// A stream delivers blocks of n_a outcomes from group a and n_b outcomes from
// group b. Each group is Bernoulli with success probability theta_g. All
// likelihood work is done in log space; KL divergences return +inf when the
// second argument puts zero mass on an outcome the first one can produce.

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace avcs {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Group : std::uint8_t { A, B };

/// A point (theta_a, theta_b) of the unit square.
class ThetaPair {
 public:
  ThetaPair() = default;
  /// Throws std::domain_error unless both components are finite and in [0,1].
  ThetaPair(double theta_a, double theta_b);

  double a() const noexcept { return a_; }
  double b() const noexcept { return b_; }
  double operator[](Group g) const noexcept { return g == Group::A ? a_ : b_; }

  /// Both coordinates strictly inside (0,1).
  bool interior() const noexcept { return a_ > 0.0 && a_ < 1.0 && b_ > 0.0 && b_ < 1.0; }

  friend bool operator==(const ThetaPair&, const ThetaPair&) = default;

 private:
  double a_ = 0.5;
  double b_ = 0.5;
};

/// Per-block group sizes; fixed for the lifetime of a stream.
class BlockDesign {
 public:
  BlockDesign() = default;
  /// Throws std::invalid_argument unless n_a >= 1 and n_b >= 1.
  BlockDesign(std::int64_t n_a, std::int64_t n_b);

  std::int64_t n_a() const noexcept { return n_a_; }
  std::int64_t n_b() const noexcept { return n_b_; }
  std::int64_t n() const noexcept { return n_a_ + n_b_; }
  std::int64_t size(Group g) const noexcept { return g == Group::A ? n_a_ : n_b_; }

  friend bool operator==(const BlockDesign&, const BlockDesign&) = default;

 private:
  std::int64_t n_a_ = 1;
  std::int64_t n_b_ = 1;
};

/// One completed block of binary outcomes.
struct Block {
  std::vector<std::uint8_t> ys_a;
  std::vector<std::uint8_t> ys_b;

  std::span<const std::uint8_t> outcomes(Group g) const noexcept {
    return g == Group::A ? std::span<const std::uint8_t>(ys_a)
                         : std::span<const std::uint8_t>(ys_b);
  }

  friend bool operator==(const Block&, const Block&) = default;
};

/// Throws std::invalid_argument if the block does not fit the design or holds
/// a value other than 0/1.
void validate_block(const Block& block, const BlockDesign& design);

/// Sufficient statistics of the data seen so far.
struct GroupCounts {
  std::int64_t ones_a = 0;
  std::int64_t trials_a = 0;
  std::int64_t ones_b = 0;
  std::int64_t trials_b = 0;

  std::int64_t ones(Group g) const noexcept { return g == Group::A ? ones_a : ones_b; }
  std::int64_t trials(Group g) const noexcept { return g == Group::A ? trials_a : trials_b; }

  void add(const Block& block);
  GroupCounts& operator+=(const GroupCounts& other) noexcept;

  friend bool operator==(const GroupCounts&, const GroupCounts&) = default;
};

/// log p_theta(y) for a single Bernoulli outcome. -inf when the pmf is zero.
/// Throws std::domain_error for theta outside [0,1] or y not in {0,1}.
double bern_log_pmf(double theta, int y);

/// Single-outcome Bernoulli KL divergence d(p || q) in nats.
double bernoulli_kl(double p, double q);

/// KL between the block distributions: n_a d(a*||a) + n_b d(b*||b).
double kl_block(const ThetaPair& star, const ThetaPair& theta, const BlockDesign& design);

/// KL for the single-outcome problem where the group is drawn with
/// probability n_g / n. Satisfies n * kl_single == kl_block.
double kl_single(const ThetaPair& star, const ThetaPair& theta, const BlockDesign& design);

double logit(double p) noexcept;
double sigmoid(double x) noexcept;

/// log[theta_b (1 - theta_a) / ((1 - theta_b) theta_a)], extended to the
/// boundary of the square by limits. Returns NaN at the corners (0,0) and
/// (1,1) where the limit does not exist.
double log_odds_ratio(const ThetaPair& theta) noexcept;

std::string to_string(Group g);

}  // namespace avcs
