#pragma once

#include <cstdint>
#include <string_view>

namespace momograd {

/// SplitMix64 generator. Used instead of <random> engines + distributions so
/// that sampled values are bit-identical across platforms and standard
/// library versions, which the reproducibility contract of the experiment
/// driver depends on.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::uint64_t state_;
};

/// FNV-1a hash, used to fold stream labels into seeds.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b) {
  return SplitMix64(a ^ (b + 0x9e3779b97f4a7c15ull)).next();
}

/// Independent substream addressed by (seed, label, index). Streams for
/// different addresses are decorrelated by the SplitMix64 finalizer, so
/// drawing from one never perturbs another.
inline SplitMix64 substream(std::uint64_t seed, std::string_view label, std::uint64_t index) {
  return SplitMix64(mix_seed(mix_seed(seed, fnv1a(label)), index));
}

}  // namespace momograd
