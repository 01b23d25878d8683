#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace olop {

/// Seeded generator shared by planners and environments. The engine is fully
/// specified by the standard; the sampling helpers below avoid the
/// implementation-defined std distributions so streams replay identically
/// across standard libraries.
using Rng = std::mt19937_64;

/// Uniform integer in [0, n). n must be positive.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  // Rejection sampling on the top of the range keeps the draw unbiased.
  const std::uint64_t limit = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= limit) return x % n;
  }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline bool bernoulli(Rng& rng, double p) { return uniform_unit(rng) < p; }

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

/// Derives an independent child seed from a parent seed and a stream tag.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(seed ^ splitmix64(stream + 0x632be59bd9b4e019ull));
}

/// FNV-1a over bytes, finalized with splitmix64.
class StableHasher {
 public:
  StableHasher& add(std::string_view s) {
    for (unsigned char c : s) mix(c);
    mix(0xff);  // field separator
    return *this;
  }
  StableHasher& add(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(v >> (8 * i)));
    return *this;
  }
  std::uint64_t digest() const { return splitmix64(state_); }

 private:
  void mix(unsigned char c) {
    state_ ^= c;
    state_ *= 0x100000001b3ull;
  }
  std::uint64_t state_ = 0xcbf29ce484222325ull;
};

}  // namespace olop
