#pragma once

#include <cstdint>
#include <random>

namespace jointdrop {

// Salts keep the JD and baseline streams for the same pair unrelated.
inline constexpr std::uint64_t kJointDropStream = 0x4a44'0000'0000'0001ULL;
inline constexpr std::uint64_t kBaselineStream = 0x4241'0000'0000'0002ULL;

std::uint64_t SplitMix64(std::uint64_t x);

// Random stream owned by one sentence pair. Seeded as a pure function of
// (seed, stream salt, pair id), never from a shared generator, so results do
// not depend on which worker processes the pair. All draws are defined on
// top of mt19937_64 output (whose sequence the standard fixes) rather than on
// std:: distributions, whose algorithms vary between standard libraries.
class PairRng {
 public:
  PairRng(std::uint64_t seed, std::uint64_t stream, std::uint64_t pair_id);

  std::uint64_t NextU64() { return engine_(); }
  // Uniform in [0, 1) with 53 random bits.
  double Uniform();
  // Uniform integer in [0, bound); bound must be > 0.
  std::uint64_t Below(std::uint64_t bound);
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace jointdrop
