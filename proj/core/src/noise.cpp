#include <algorithm>
#include <cmath>
#include <numbers>

#include "rustforge/errors.hpp"
#include "rustforge/rng.hpp"
#include "rustforge/texture.hpp"

namespace rustforge {

namespace {

std::uint64_t lattice_hash(std::int64_t ix, std::int64_t iy, std::uint64_t seed) {
  std::uint64_t h = splitmix64_mix(seed + 0x9E3779B97F4A7C15ULL);
  h = splitmix64_mix(h ^ std::uint64_t(ix));
  h = splitmix64_mix(h ^ (std::uint64_t(iy) * 0xD6E8FEB86659FD93ULL));
  return h;
}

double corner_dot(std::int64_t ix, std::int64_t iy, std::uint64_t seed, double dx, double dy) {
  const double angle = double(lattice_hash(ix, iy, seed) >> 11) * 0x1.0p-53 * 2.0 * std::numbers::pi;
  return std::cos(angle) * dx + std::sin(angle) * dy;
}

constexpr double fade(double t) { return t * t * t * (t * (t * 6.0 - 15.0) + 10.0); }

}  // namespace

double gradient_noise(double x, double y, std::uint64_t seed) {
  const double fx = std::floor(x);
  const double fy = std::floor(y);
  const auto ix = static_cast<std::int64_t>(fx);
  const auto iy = static_cast<std::int64_t>(fy);
  const double dx = x - fx;
  const double dy = y - fy;

  const double n00 = corner_dot(ix, iy, seed, dx, dy);
  const double n10 = corner_dot(ix + 1, iy, seed, dx - 1.0, dy);
  const double n01 = corner_dot(ix, iy + 1, seed, dx, dy - 1.0);
  const double n11 = corner_dot(ix + 1, iy + 1, seed, dx - 1.0, dy - 1.0);

  const double u = fade(dx);
  const double v = fade(dy);
  const double nx0 = n00 + u * (n10 - n00);
  const double nx1 = n01 + u * (n11 - n01);
  // Unit gradients bound 2D Perlin noise by sqrt(2)/2; rescale to [-1, 1].
  return std::clamp((nx0 + v * (nx1 - nx0)) * std::numbers::sqrt2, -1.0, 1.0);
}

double fbm(double x, double y, std::uint64_t seed, int octaves, double lacunarity, double gain) {
  if (octaves < 1) throw ArgumentError("fbm: octaves must be >= 1");
  double sum = 0.0;
  double norm = 0.0;
  double amplitude = 1.0;
  double frequency = 1.0;
  for (int i = 0; i < octaves; ++i) {
    sum += amplitude * gradient_noise(x * frequency, y * frequency, seed ^ std::uint64_t(i));
    norm += std::abs(amplitude);
    amplitude *= gain;
    frequency *= lacunarity;
  }
  const double value = norm > 0.0 ? sum / norm : 0.0;
  return std::clamp(0.5 * (value + 1.0), 0.0, 1.0);
}

}  // namespace rustforge
