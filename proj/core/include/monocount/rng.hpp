#pragma once

#include <cstdint>
#include <random>

namespace monocount {

/// SplitMix64 finalizer. Used to turn (master seed, index) pairs into
/// well-separated child seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Child seed for trial `index` of a run seeded with `master`:
/// splitmix64(master ^ splitmix64(index)).
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return splitmix64(master ^ splitmix64(index));
}

/// Seedable generator with a platform-independent output sequence.
///
/// The engine is std::mt19937_64 (whose output is fixed by the standard);
/// the standard distributions are not, so bounded integers and unit reals
/// are derived here with fixed algorithms.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be nonzero. Lemire's
  /// multiply-shift with rejection, so the result is exactly uniform.
  std::uint64_t below(std::uint64_t bound);

  /// Fair coin from the top bit of one draw.
  bool coin() { return (next() >> 63) != 0; }

  /// Uniform double in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace monocount
