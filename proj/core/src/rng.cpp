#include "avcs/rng.hpp"

namespace avcs {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream_index, Group group) noexcept {
  const std::uint64_t g = group == Group::A ? 1 : 2;
  return splitmix64(splitmix64(splitmix64(seed) ^ stream_index) ^ g);
}

BlockSource::BlockSource(const ThetaPair& star, const BlockDesign& design, std::uint64_t seed,
                         std::uint64_t stream_index)
    : star_(star),
      design_(design),
      a_(stream_seed(seed, stream_index, Group::A)),
      b_(stream_seed(seed, stream_index, Group::B)) {}

Block BlockSource::next() {
  Block block;
  block.ys_a.resize(static_cast<std::size_t>(design_.n_a()));
  block.ys_b.resize(static_cast<std::size_t>(design_.n_b()));
  for (auto& y : block.ys_a) y = a_.draw(star_.a());
  for (auto& y : block.ys_b) y = b_.draw(star_.b());
  return block;
}

}  // namespace avcs
