#pragma once

#include <cstdint>
#include <random>

namespace semibandit {

// All stochastic draws go through std::mt19937_64 plus the helpers below,
// none of the implementation-defined <random> distributions. This keeps
// traces bit-identical across platforms for a given seed.
using Rng = std::mt19937_64;

// SplitMix64 (Steele, Lea, Vigna). Used only to derive per-run seeds.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Stable run-seed derivation: adding runs never perturbs existing ones.
inline std::uint64_t derive_run_seed(std::uint64_t master_seed,
                                     std::uint64_t run_index) {
  return splitmix64(master_seed ^ splitmix64(run_index + 1));
}

// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One Bernoulli(mean) draw as a 0/1 weight.
inline double bernoulli01(Rng& rng, double mean) {
  return uniform01(rng) < mean ? 1.0 : 0.0;
}

}  // namespace semibandit
