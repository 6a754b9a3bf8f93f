#pragma once

#include <cstdint>

namespace smbo {

// Counter-based random numbers: every draw is a pure function of
// (seed, stream, counter), so results do not depend on evaluation order or
// thread schedule.

constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  // splitmix64 finalizer
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t hash64(std::uint64_t seed, std::uint64_t stream,
                               std::uint64_t counter) noexcept {
  return mix64(mix64(mix64(seed) ^ stream) ^ counter);
}

/// Uniform double in [0, 1) with 53 random bits.
constexpr double to_unit(std::uint64_t bits) noexcept {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// A view on one (seed, stream) pair; `at(i)` is the i-th draw.
class CounterRng {
 public:
  constexpr CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : seed_(seed), stream_(stream) {}

  constexpr std::uint64_t bits(std::uint64_t counter) const noexcept {
    return hash64(seed_, stream_, counter);
  }
  constexpr double uniform(std::uint64_t counter) const noexcept {
    return to_unit(bits(counter));
  }
  /// +1 or -1 with equal probability.
  constexpr double sign(std::uint64_t counter) const noexcept {
    return (bits(counter) >> 63) ? 1.0 : -1.0;
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
};

// Stream identifiers, so that different consumers of one seed never overlap.
namespace streams {
inline constexpr std::uint64_t kErdosRenyi = 0x45520001;
inline constexpr std::uint64_t kModular = 0x4d4f0002;
inline constexpr std::uint64_t kReweight = 0x52570003;
inline constexpr std::uint64_t kLanczosStart = 0x4c5a0004;
inline constexpr std::uint64_t kInitialCondition = 0x49430005;
inline constexpr std::uint64_t kBaseline = 0x424c0006;
inline constexpr std::uint64_t kPowerIteration = 0x50490007;
}  // namespace streams

}  // namespace smbo
