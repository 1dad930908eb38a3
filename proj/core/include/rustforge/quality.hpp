#pragma once

#include <array>
#include <string_view>
#include <utility>
#include <vector>

#include "rustforge/image.hpp"
#include "rustforge/texture.hpp"

namespace rustforge {

struct CoverageBand {
  double min = 0.0;
  double max = 1.0;
};

struct CoverageBands {
  std::array<CoverageBand, 3> per_class{{{0.0, 0.05}, {0.05, 0.50}, {0.60, 1.0}}};

  const CoverageBand& operator[](RustClass c) const { return per_class[std::size_t(class_id(c))]; }
  CoverageBand& operator[](RustClass c) { return per_class[std::size_t(class_id(c))]; }
};

/// HSV window that classifies a pixel as rust. Hue in degrees, the rest in [0, 1].
struct RustHueWindow {
  double hue_min = 5.0;
  double hue_max = 45.0;
  double saturation_min = 0.30;
  double value_min = 0.10;
  double value_max = 0.90;
};

struct QualityThresholds {
  CoverageBands bands;
  double clutter_max = 0.25;
  /// |Laplacian| above this (8-bit luminance scale) counts as an edge pixel.
  double laplacian_threshold = 32.0;
  RustHueWindow hue;

  void validate() const;
};

enum class RejectReason { CoverageBelowBand, CoverageAboveBand, TooCluttered };

std::string_view reason_name(RejectReason r);

struct Verdict {
  bool accepted = false;
  double coverage = 0.0;
  double clutter = 0.0;
  std::vector<RejectReason> reasons;

  bool operator==(const Verdict&) const = default;
};

bool is_rust_pixel(Rgb8 c, const RustHueWindow& window = {});

/// Fraction of pixels inside the rust HSV window.
double rust_coverage(const TextureImage& img, const RustHueWindow& window = {});

/// Fraction of interior pixels whose 4-neighbor luminance Laplacian exceeds
/// `laplacian_threshold`. Requires at least 3x3 pixels (ArgumentError).
double clutter_score(const TextureImage& img, double laplacian_threshold = 32.0);

Verdict accept_texture(const TextureImage& img, RustClass cls, const QualityThresholds& thresholds = {});

inline Verdict accept_texture(const TextureImage& img, RustClass cls, const CoverageBands& bands,
                              double clutter_max = 0.25) {
  QualityThresholds t;
  t.bands = bands;
  t.clutter_max = clutter_max;
  return accept_texture(img, cls, t);
}

}  // namespace rustforge
