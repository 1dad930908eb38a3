#include "rustforge/quality.hpp"

#include <algorithm>
#include <cmath>

#include "rustforge/errors.hpp"

namespace rustforge {

std::string_view reason_name(RejectReason r) {
  switch (r) {
    case RejectReason::CoverageBelowBand: return "CoverageBelowBand";
    case RejectReason::CoverageAboveBand: return "CoverageAboveBand";
    case RejectReason::TooCluttered: return "TooCluttered";
  }
  return "unknown";
}

void QualityThresholds::validate() const {
  for (const CoverageBand& b : bands.per_class) {
    if (!(b.min >= 0.0 && b.max <= 1.0 && b.min <= b.max)) {
      throw ArgumentError("coverage bands must satisfy 0 <= min <= max <= 1");
    }
  }
  if (!(clutter_max >= 0.0 && clutter_max <= 1.0)) throw ArgumentError("clutter_max must lie in [0, 1]");
  if (!(laplacian_threshold >= 0.0)) throw ArgumentError("laplacian threshold must be >= 0");
}

bool is_rust_pixel(Rgb8 px, const RustHueWindow& win) {
  const int mx = std::max({px.r, px.g, px.b});
  const int mn = std::min({px.r, px.g, px.b});
  const double value = mx / 255.0;
  if (value < win.value_min || value > win.value_max) return false;
  const double chroma = mx - mn;
  const double saturation = mx == 0 ? 0.0 : chroma / mx;
  if (saturation < win.saturation_min || chroma == 0.0) return false;

  double hue;
  if (mx == px.r) {
    hue = 60.0 * (double(px.g) - px.b) / chroma;
  } else if (mx == px.g) {
    hue = 60.0 * ((double(px.b) - px.r) / chroma + 2.0);
  } else {
    hue = 60.0 * ((double(px.r) - px.g) / chroma + 4.0);
  }
  if (hue < 0.0) hue += 360.0;
  return hue >= win.hue_min && hue <= win.hue_max;
}

double rust_coverage(const TextureImage& img, const RustHueWindow& window) {
  std::size_t rust = 0;
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) rust += is_rust_pixel(img.at(x, y), window) ? 1 : 0;
  }
  return double(rust) / double(img.pixel_count());
}

double clutter_score(const TextureImage& img, double laplacian_threshold) {
  const int w = img.width(), h = img.height();
  if (w < 3 || h < 3) throw ArgumentError("clutter_score needs an image of at least 3x3 pixels");
  std::vector<double> lum(img.pixel_count());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const Rgb8 c = img.at(x, y);
      lum[std::size_t(y) * std::size_t(w) + std::size_t(x)] = 0.299 * c.r + 0.587 * c.g + 0.114 * c.b;
    }
  }
  auto L = [&](int x, int y) { return lum[std::size_t(y) * std::size_t(w) + std::size_t(x)]; };
  std::size_t edges = 0;
  for (int y = 1; y < h - 1; ++y) {
    for (int x = 1; x < w - 1; ++x) {
      const double lap = 4.0 * L(x, y) - L(x - 1, y) - L(x + 1, y) - L(x, y - 1) - L(x, y + 1);
      if (std::abs(lap) > laplacian_threshold) ++edges;
    }
  }
  return double(edges) / (double(w - 2) * double(h - 2));
}

Verdict accept_texture(const TextureImage& img, RustClass cls, const QualityThresholds& t) {
  Verdict v;
  v.coverage = rust_coverage(img, t.hue);
  v.clutter = clutter_score(img, t.laplacian_threshold);
  const CoverageBand& band = t.bands[cls];
  if (v.coverage < band.min) v.reasons.push_back(RejectReason::CoverageBelowBand);
  if (v.coverage > band.max) v.reasons.push_back(RejectReason::CoverageAboveBand);
  if (v.clutter > t.clutter_max) v.reasons.push_back(RejectReason::TooCluttered);
  v.accepted = v.reasons.empty();
  return v;
}

}  // namespace rustforge
