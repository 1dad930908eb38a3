#include "rustforge/image.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rustforge/errors.hpp"

namespace rustforge {

std::uint8_t quantize(double value) {
  if (!(value > 0.0)) return 0;  // also maps NaN to 0
  if (value >= 255.0) return 255;
  return static_cast<std::uint8_t>(std::floor(value + 0.5));
}

Rgb8 quantize(const RgbF& c) { return {quantize(c.r), quantize(c.g), quantize(c.b)}; }

TextureImage::TextureImage(int width, int height, Rgb8 fill) : width_(width), height_(height) {
  if (width < 1 || height < 1) {
    throw ArgumentError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                        std::to_string(height));
  }
  pixels_.resize(pixel_count() * 3);
  for (std::size_t i = 0; i < pixels_.size(); i += 3) {
    pixels_[i] = fill.r;
    pixels_[i + 1] = fill.g;
    pixels_[i + 2] = fill.b;
  }
}

TextureImage TextureImage::from_pixels(int width, int height, std::vector<std::uint8_t> pixels) {
  TextureImage img(width, height);
  if (pixels.size() != img.pixels_.size()) {
    throw ArgumentError("pixel buffer holds " + std::to_string(pixels.size()) + " bytes, expected " +
                        std::to_string(img.pixels_.size()));
  }
  img.pixels_ = std::move(pixels);
  return img;
}

FloatImage::FloatImage(int width, int height)
    : width_(width), height_(height), data_(std::size_t(width) * std::size_t(height) * 3, 0.0) {
  if (width < 1 || height < 1) throw ArgumentError("image dimensions must be positive");
}

FloatImage::FloatImage(const TextureImage& img) : FloatImage(img.width(), img.height()) {
  const auto bytes = img.bytes();
  std::transform(bytes.begin(), bytes.end(), data_.begin(), [](std::uint8_t b) { return double(b); });
}

RgbF sample_bilinear(const TextureImage& tex, double u, double v) {
  const int w = tex.width();
  const int h = tex.height();
  const double px = (u - std::floor(u)) * w - 0.5;
  const double py = (v - std::floor(v)) * h - 0.5;
  const double fx0 = std::floor(px);
  const double fy0 = std::floor(py);
  const double tx = px - fx0;
  const double ty = py - fy0;

  auto wrap = [](long i, int n) { return int(((i % n) + n) % n); };
  const int x0 = wrap(long(fx0), w), x1 = wrap(long(fx0) + 1, w);
  const int y0 = wrap(long(fy0), h), y1 = wrap(long(fy0) + 1, h);

  const RgbF c00 = to_float(tex.at(x0, y0)), c10 = to_float(tex.at(x1, y0));
  const RgbF c01 = to_float(tex.at(x0, y1)), c11 = to_float(tex.at(x1, y1));
  const RgbF top = c00 + (c10 - c00) * tx;
  const RgbF bottom = c01 + (c11 - c01) * tx;
  return top + (bottom - top) * ty;
}

}  // namespace rustforge
