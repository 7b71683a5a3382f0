#include "probe/rng.hpp"

namespace probe {

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  SplitMix64 rng(a);
  std::uint64_t s = rng.next() ^ b;
  SplitMix64 rng2(s);
  s = rng2.next() ^ c;
  SplitMix64 rng3(s);
  return rng3.next();
}

}  // namespace probe
