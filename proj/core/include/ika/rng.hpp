#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace ika {

// Identifier recorded in experiment metadata so results can be tied to the
// exact generator that produced them.
inline constexpr std::string_view kRngAlgorithm = "xoshiro256++/splitmix64";

// FNV-1a over raw bytes; hashes stream labels and file contents (the config
// fingerprint in experiment metadata).
std::uint64_t fnv1a64(std::string_view bytes);

// Derives a child seed from a base seed and a label or index. Streams with
// different labels are statistically independent, so changing how one stream
// is consumed never perturbs another.
std::uint64_t derive_seed(std::uint64_t base, std::string_view label);
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// xoshiro256++ generator, state seeded through splitmix64. All distribution
// mappings below are pinned (no standard-library distributions) so output is
// bit-reproducible across platforms and compilers.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // Uniform in [0, 1), 53 bits of mantissa.
  double next_double();

  // Uniform integer in [0, bound) via the multiply-shift method.
  std::uint64_t uniform_index(std::uint64_t bound);

  // Standard normal via Box-Muller; the spare value is cached.
  double normal();

 private:
  std::uint64_t state_[4];
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// First k entries of a seeded Fisher-Yates shuffle of {0, ..., n-1}:
// a uniform sample of k distinct indices.
std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k, Rng& rng);

}  // namespace ika
