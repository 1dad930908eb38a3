#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rustforge/image.hpp"

namespace rustforge {

enum class RustClass : int { Default = 0, RustStreaks = 1, CompleteRust = 2 };

inline constexpr std::array<RustClass, 3> kAllRustClasses{
    RustClass::Default, RustClass::RustStreaks, RustClass::CompleteRust};

constexpr int class_id(RustClass c) { return static_cast<int>(c); }

/// "default", "rust streaks", "complete rust".
std::string_view class_name(RustClass c);
/// File-name friendly form: "default", "rust_streaks", "complete_rust".
std::string_view class_slug(RustClass c);
std::optional<RustClass> class_from_id(int id);
/// Accepts the canonical name or the slug (hyphens also allowed).
std::optional<RustClass> class_from_name(std::string_view name);

struct RampStop {
  double position = 0.0;
  /// Ignored for the stop at 0.0, which always takes the base pixel color.
  Rgb8 color;
};

struct RustParams {
  int octaves = 5;
  double lacunarity = 2.0;
  double gain = 0.5;
  /// Noise cells across the texture width.
  double frequency = 6.0;
  std::vector<RampStop> ramp = default_ramp();
  /// Vertical stretch applied to streak noise.
  double streak_anisotropy = 8.0;
  /// Target fraction of pixels that turn to rust.
  double coverage_bias = 0.85;

  static std::vector<RampStop> default_ramp();
  static RustParams defaults_for(RustClass c);

  /// Throws ArgumentError when a field is out of range.
  void validate() const;
};

/// 2D gradient noise in [-1, 1]; zero on the integer lattice.
double gradient_noise(double x, double y, std::uint64_t seed);

/// Fractal sum of gradient noise octaves, remapped to [0, 1].
double fbm(double x, double y, std::uint64_t seed, int octaves, double lacunarity, double gain);

/// Deterministic stand-in for prompt-driven texture generation. Default
/// returns `base` unchanged; the rust classes paint ramp colors over the
/// fraction of pixels selected by the thresholded noise field.
TextureImage generate_rust_texture(const TextureImage& base, RustClass cls, std::uint64_t seed,
                                   const RustParams& params);

/// Painted-metal base texture used when no base image is supplied.
TextureImage make_builtin_base_texture(int width = 512, int height = 512);

struct TextureProvenance {
  std::string file_name;
  RustClass cls = RustClass::Default;
};

struct ImportedTexture {
  TextureImage image;
  TextureProvenance provenance;
};

struct ImportFailure {
  std::string file_name;
  std::string message;
};

struct ImportResult {
  std::vector<ImportedTexture> textures;
  std::vector<ImportFailure> failures;
};

/// Decodes every *.png in `directory` in file-name order. Undecodable files
/// are reported in `failures`. With `recursive`, subdirectories are walked
/// and `file_name` is the path relative to `directory`.
/// Throws IoError when the directory does not exist.
ImportResult import_textures(const std::filesystem::path& directory, RustClass cls,
                             bool recursive = false);

}  // namespace rustforge
