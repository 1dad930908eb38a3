#include "rustforge/rng.hpp"

#include <algorithm>

namespace rustforge {

double SplitMix64::uniform(double lo, double hi) {
  if (lo == hi) {
    next();  // keep the draw count independent of the range
    return lo;
  }
  return std::clamp(lo + (hi - lo) * uniform01(), lo, hi);
}

namespace {

constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace

SplitMix64 derive_rng(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
  std::uint64_t h = splitmix64_mix(seed ^ 0x243F6A8885A308D3ULL);
  h = splitmix64_mix(h ^ fnv1a(tag));
  h = splitmix64_mix(h + index * 0x9E3779B97F4A7C15ULL);
  return SplitMix64(h);
}

}  // namespace rustforge
