#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace rustforge {

struct Rgb8 {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;
  constexpr bool operator==(const Rgb8&) const = default;
};

/// Real-valued RGB on the 0..255 scale.
struct RgbF {
  double r = 0.0;
  double g = 0.0;
  double b = 0.0;

  constexpr RgbF operator+(const RgbF& o) const { return {r + o.r, g + o.g, b + o.b}; }
  constexpr RgbF operator-(const RgbF& o) const { return {r - o.r, g - o.g, b - o.b}; }
  constexpr RgbF operator*(double s) const { return {r * s, g * s, b * s}; }
  constexpr double operator[](int c) const { return c == 0 ? r : (c == 1 ? g : b); }
  constexpr bool operator==(const RgbF&) const = default;
};

constexpr RgbF to_float(Rgb8 c) { return {double(c.r), double(c.g), double(c.b)}; }

/// Round half up, clamped to [0, 255].
std::uint8_t quantize(double value);
Rgb8 quantize(const RgbF& c);

/// Row-major RGB8 raster. Width and height are at least 1.
class TextureImage {
public:
  TextureImage(int width, int height, Rgb8 fill = {});
  /// Takes ownership of `pixels`, which must hold exactly 3 * width * height bytes.
  static TextureImage from_pixels(int width, int height, std::vector<std::uint8_t> pixels);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t pixel_count() const noexcept { return std::size_t(width_) * std::size_t(height_); }

  Rgb8 at(int x, int y) const {
    const std::size_t i = index(x, y);
    return {pixels_[i], pixels_[i + 1], pixels_[i + 2]};
  }
  void set(int x, int y, Rgb8 c) {
    const std::size_t i = index(x, y);
    pixels_[i] = c.r;
    pixels_[i + 1] = c.g;
    pixels_[i + 2] = c.b;
  }

  std::span<const std::uint8_t> bytes() const noexcept { return pixels_; }
  std::span<std::uint8_t> bytes() noexcept { return pixels_; }

  bool operator==(const TextureImage&) const = default;

private:
  std::size_t index(int x, int y) const noexcept {
    return (std::size_t(y) * std::size_t(width_) + std::size_t(x)) * 3;
  }

  int width_;
  int height_;
  std::vector<std::uint8_t> pixels_;
};

/// Real-valued RGB raster used for intermediate filtering.
class FloatImage {
public:
  FloatImage(int width, int height);
  explicit FloatImage(const TextureImage& img);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  double& at(int x, int y, int channel) {
    return data_[(std::size_t(y) * std::size_t(width_) + std::size_t(x)) * 3 + std::size_t(channel)];
  }
  double at(int x, int y, int channel) const {
    return data_[(std::size_t(y) * std::size_t(width_) + std::size_t(x)) * 3 + std::size_t(channel)];
  }
  RgbF pixel(int x, int y) const { return {at(x, y, 0), at(x, y, 1), at(x, y, 2)}; }

  std::span<const double> values() const noexcept { return data_; }

private:
  int width_;
  int height_;
  std::vector<double> data_;
};

/// Bilinear texture lookup with repeat wrapping. Texel (i, j) has its center
/// at ((i + 0.5) / W, (j + 0.5) / H); v = 0 is the top image row.
RgbF sample_bilinear(const TextureImage& tex, double u, double v);

}  // namespace rustforge
