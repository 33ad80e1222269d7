#pragma once

#include <cstdint>
#include <random>

#include "avcs/model.hpp"

namespace avcs {

/// SplitMix64 finaliser; used to derive independent seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for the generator of one (stream, group) pair:
///   splitmix64(splitmix64(splitmix64(seed) ^ stream_index) ^ (group + 1)).
/// Each pair gets its own std::mt19937_64, whose output sequence is fixed by
/// the C++ standard, so seeded runs reproduce bit-for-bit across platforms.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream_index, Group group) noexcept;

/// Bernoulli draws from one mt19937_64. Uses the top 53 bits of each output
/// as a uniform in [0,1); std::bernoulli_distribution is avoided because its
/// algorithm is implementation-defined.
class BernoulliSource {
 public:
  explicit BernoulliSource(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  std::uint8_t draw(double theta) noexcept { return uniform() < theta ? 1 : 0; }

 private:
  std::mt19937_64 engine_;
};

/// Sequential block generator for one simulated stream.
class BlockSource {
 public:
  BlockSource(const ThetaPair& star, const BlockDesign& design, std::uint64_t seed,
              std::uint64_t stream_index);

  Block next();

 private:
  ThetaPair star_;
  BlockDesign design_;
  BernoulliSource a_;
  BernoulliSource b_;
};

}  // namespace avcs
