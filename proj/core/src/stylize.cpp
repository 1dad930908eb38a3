#include "rustforge/stylize.hpp"

#include <algorithm>
#include <cmath>

#include "rustforge/errors.hpp"

namespace rustforge {

void StylizeParams::validate() const {
  if (!(strength >= 0.0 && strength <= 1.0)) throw ArgumentError("stylize: strength must lie in [0, 1]");
  if (!(detail_weight >= 0.0)) throw ArgumentError("stylize: detail weight must be >= 0");
  if (blur_radius < 1) throw ArgumentError("stylize: blur radius must be >= 1");
  if (!(epsilon > 0.0)) throw ArgumentError("stylize: epsilon must be > 0");
}

ChannelStats channel_stats(const TextureImage& img) {
  const auto bytes = img.bytes();
  const double n = double(img.pixel_count());
  std::array<double, 3> sum{};
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    for (std::size_t c = 0; c < 3; ++c) sum[c] += bytes[i + c];
  }
  ChannelStats s;
  for (std::size_t c = 0; c < 3; ++c) s.mean[c] = sum[c] / n;
  // Second pass around the mean for numerical stability.
  std::array<double, 3> sq{};
  for (std::size_t i = 0; i < bytes.size(); i += 3) {
    for (std::size_t c = 0; c < 3; ++c) {
      const double d = bytes[i + c] - s.mean[c];
      sq[c] += d * d;
    }
  }
  for (std::size_t c = 0; c < 3; ++c) s.stddev[c] = std::sqrt(sq[c] / n);
  return s;
}

namespace {

void blur_rows(const FloatImage& src, FloatImage& dst, int radius) {
  const int w = src.width(), h = src.height();
  const double inv = 1.0 / double(2 * radius + 1);
  for (int y = 0; y < h; ++y) {
    for (int c = 0; c < 3; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += src.at(std::clamp(k, 0, w - 1), y, c);
      for (int x = 0; x < w; ++x) {
        dst.at(x, y, c) = acc * inv;
        acc += src.at(std::min(x + radius + 1, w - 1), y, c) - src.at(std::max(x - radius, 0), y, c);
      }
    }
  }
}

void blur_cols(const FloatImage& src, FloatImage& dst, int radius) {
  const int w = src.width(), h = src.height();
  const double inv = 1.0 / double(2 * radius + 1);
  for (int x = 0; x < w; ++x) {
    for (int c = 0; c < 3; ++c) {
      double acc = 0.0;
      for (int k = -radius; k <= radius; ++k) acc += src.at(x, std::clamp(k, 0, h - 1), c);
      for (int y = 0; y < h; ++y) {
        dst.at(x, y, c) = acc * inv;
        acc += src.at(x, std::min(y + radius + 1, h - 1), c) - src.at(x, std::max(y - radius, 0), c);
      }
    }
  }
}

}  // namespace

FloatImage box_blur(const TextureImage& img, int radius, int passes) {
  if (radius < 1 || passes < 1) throw ArgumentError("box_blur: radius and passes must be >= 1");
  FloatImage a(img);
  FloatImage b(img.width(), img.height());
  for (int p = 0; p < passes; ++p) {
    blur_rows(a, b, radius);
    blur_cols(b, a, radius);
  }
  return a;
}

TextureImage stylize(const TextureImage& content, const TextureImage& style, const StylizeParams& params) {
  params.validate();
  if (params.strength == 0.0) return content;

  const ChannelStats cs = channel_stats(content);
  const ChannelStats ss = channel_stats(style);
  std::array<double, 3> gain{};
  for (std::size_t c = 0; c < 3; ++c) gain[c] = ss.stddev[c] / std::max(cs.stddev[c], params.epsilon);

  const bool with_detail = params.detail_weight > 0.0;
  const FloatImage blurred = with_detail ? box_blur(content, params.blur_radius) : FloatImage(1, 1);
  const double s = params.strength;
  const double k = params.detail_weight * s;

  // Rounding residuals are carried along the scan so each channel sum stays exact to half a level.
  std::array<double, 3> carry{};
  auto emit = [&carry](int c, double value) {
    const double t = std::clamp(value, 0.0, 255.0) + carry[std::size_t(c)];
    const double q = std::clamp(std::floor(t + 0.5), 0.0, 255.0);
    carry[std::size_t(c)] = t - q;
    return std::uint8_t(q);
  };

  TextureImage out(content.width(), content.height());
  for (int y = 0; y < content.height(); ++y) {
    for (int x = 0; x < content.width(); ++x) {
      const RgbF src = to_float(content.at(x, y));
      std::array<double, 3> v{};
      for (int c = 0; c < 3; ++c) {
        const double transferred = (src[c] - cs.mean[std::size_t(c)]) * gain[std::size_t(c)] + ss.mean[std::size_t(c)];
        const double detail = with_detail ? src[c] - blurred.at(x, y, c) : 0.0;
        v[std::size_t(c)] = (1.0 - s) * src[c] + s * transferred + k * detail;
      }
      out.set(x, y, {emit(0, v[0]), emit(1, v[1]), emit(2, v[2])});
    }
  }
  return out;
}

}  // namespace rustforge
