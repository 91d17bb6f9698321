#include "jointdrop/rng.hpp"

namespace jointdrop {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

PairRng::PairRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t pair_id)
    : engine_(SplitMix64(SplitMix64(SplitMix64(seed) ^ stream) ^ pair_id)) {}

double PairRng::Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t PairRng::Below(std::uint64_t bound) {
  // Rejection sampling on the top of the range removes modulo bias.
  const std::uint64_t limit = -bound % bound;  // == 2^64 mod bound
  for (;;) {
    const std::uint64_t x = engine_();
    if (x >= limit) return x % bound;
  }
}

}  // namespace jointdrop
