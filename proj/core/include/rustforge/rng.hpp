#pragma once

#include <cstdint>
#include <string_view>

namespace rustforge {

/// SplitMix64 output finalizer.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// SplitMix64 generator. Satisfies UniformRandomBitGenerator.
class SplitMix64 {
public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  constexpr std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return splitmix64_mix(state_);
  }
  constexpr std::uint64_t operator()() { return next(); }
  static constexpr std::uint64_t min() { return 0; }
  static constexpr std::uint64_t max() { return ~std::uint64_t{0}; }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return double(next() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi]; returns lo when lo == hi.
  double uniform(double lo, double hi);

  std::uint64_t state() const noexcept { return state_; }

private:
  std::uint64_t state_;
};

/// Independent sub-stream for (seed, tag, index).
SplitMix64 derive_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index);

}  // namespace rustforge
