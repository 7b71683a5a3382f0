#pragma once

#include <cstdint>

namespace probe {

/// SplitMix64 stream. Chosen over std::mt19937 for seed derivation and move
/// scrambling because the whole algorithm is three lines and can be replayed
/// exactly from any language or by hand.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform-enough pick in [0, n). Modulo bias is irrelevant for n <= 4.
  std::uint64_t next_below(std::uint64_t n) { return next() % n; }

 private:
  std::uint64_t state_;
};

/// One-shot mix of up to three words into a derived seed.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0);

}  // namespace probe
