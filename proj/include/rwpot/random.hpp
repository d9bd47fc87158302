#pragma once

#include <cstdint>
#include <random>

#include "rwpot/lattice.hpp"

namespace rwpot {

inline constexpr const char* kUniformGeneratorId = "splitmix64-site-key/v1";

// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Derives an independent stream seed from (seed, stream index).
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(mix64(seed) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

// Uniform in the open interval (0,1), keyed by (seed, site). The value at a
// site does not depend on which other sites are sampled or in what order.
double keyed_uniform(std::uint64_t seed, const Site& site, int d);

// Per-replica walk generator. Draws nearest-neighbour directions in
// [0, 2d) from a 64-bit Mersenne twister, reusing unused random bits.
class StepSource {
 public:
  StepSource(std::uint64_t seed, int d);

  int next_direction();
  double next_uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  int d_;
  int bits_per_draw_;
  std::uint64_t buffer_ = 0;
  int bits_left_ = 0;
};

}  // namespace rwpot
