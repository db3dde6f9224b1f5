#pragma once

#include <cstdint>
#include <random>

namespace forte {

/// Deterministic random source. The underlying generator is std::mt19937_64,
/// whose output sequence is fixed by the C++ standard, and all distributions
/// are implemented here (never via std:: distribution classes, whose streams
/// vary between standard libraries). Equal seeds give equal streams on every
/// platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound), bound > 0, rejection-sampled (unbiased).
  std::uint64_t next_below(std::uint64_t bound);

  /// Standard normal via Box-Muller on the uniform stream above.
  double next_normal();

  /// Independent substream derived by mixing the stream index into the seed.
  SeededRng derive(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// splitmix64 finalizer, used for substream seed derivation.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace forte
