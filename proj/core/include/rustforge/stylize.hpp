#pragma once

#include <array>

#include "rustforge/image.hpp"

namespace rustforge {

struct ChannelStats {
  std::array<double, 3> mean{};
  /// Population standard deviation.
  std::array<double, 3> stddev{};
};

struct StylizeParams {
  double strength = 1.0;
  double detail_weight = 0.6;
  int blur_radius = 2;
  double epsilon = 1e-6;

  void validate() const;
};

ChannelStats channel_stats(const TextureImage& img);

/// Separable box filter of width 2 * radius + 1 with clamp-to-edge borders,
/// applied `passes` times.
FloatImage box_blur(const TextureImage& img, int radius, int passes = 2);

/// Recolors `content` to the channel statistics of `style`, then adds back
/// the content's high-pass detail layer. Output has the content's size.
TextureImage stylize(const TextureImage& content, const TextureImage& style,
                     const StylizeParams& params = {});

}  // namespace rustforge
