#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "rustforge/quality.hpp"
#include "rustforge/render.hpp"
#include "rustforge/stylize.hpp"

namespace rustforge {

struct RangeSpec {
  double min = 0.0;
  double max = 0.0;

  static RangeSpec fixed(double v) { return {v, v}; }
  bool degenerate() const { return min == max; }
};

enum class TextureMode { Procedural, Import };

struct CylinderSpec {
  double radius = 1.0;
  double height = 2.0;
  int segments = 64;
};

struct ForgeConfig {
  std::uint64_t seed = 0;
  int images_per_class = 667;
  Resolution resolution{640, 480};

  RangeSpec camera_distance{5.0, 8.0};
  RangeSpec camera_azimuth{0.0, 360.0};
  RangeSpec camera_elevation{5.0, 35.0};
  double camera_fov_deg = 45.0;

  RangeSpec light_yaw{0.0, 360.0};
  RangeSpec light_pitch{20.0, 70.0};
  RangeSpec light_intensity{0.6, 1.0};
  RangeSpec ambient{0.2, 0.4};

  /// OBJ path or "builtin:cylinder".
  std::string model = "builtin:cylinder";
  CylinderSpec cylinder;
  /// PNG path or "builtin:metal".
  std::string base_texture = "builtin:metal";

  TextureMode texture_mode = TextureMode::Procedural;
  /// Import root holding one subdirectory per class slug or class name.
  std::filesystem::path import_directory;

  QualityThresholds quality;
  StylizeParams stylize;

  std::filesystem::path output_directory = "out";
  double train_fraction = 0.9;
  double val_fraction = 0.1;

  Rgb8 background = kDefaultBackground;
  std::size_t min_visible_pixels = 9;
  int threads = 1;

  /// Throws ConfigError naming the first invalid field.
  void validate() const;
};

/// Parses a forge.json document. Unknown keys are rejected. Relative paths
/// are resolved against `base_dir` when given.
ForgeConfig parse_config(const std::string& json_text,
                         const std::filesystem::path& base_dir = {});
ForgeConfig load_config(const std::filesystem::path& path);
/// Serializes every field, so parse_config(to_json(c)) == c.
std::string to_json(const ForgeConfig& config);

}  // namespace rustforge
