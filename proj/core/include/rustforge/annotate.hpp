#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "rustforge/render.hpp"

namespace rustforge {

/// Inclusive pixel bounds.
struct PixelBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  bool operator==(const PixelBox&) const = default;
};

struct YoloAnnotation {
  int class_id = 0;
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;

  bool operator==(const YoloAnnotation&) const = default;
};

/// Class id in {0,1,2}, sizes in (0,1], box inside [0,1] up to `tolerance`.
bool is_valid(const YoloAnnotation& a, double tolerance = 0.0);

/// Tight box around the pixels carrying `id`; empty if none do.
std::optional<PixelBox> bbox_from_idmap(const Frame& frame, ObjectId id);
std::size_t visible_pixel_count(const Frame& frame, ObjectId id);

YoloAnnotation to_yolo(const PixelBox& box, Resolution resolution, int class_id);
PixelBox to_pixel(const YoloAnnotation& a, Resolution resolution);

/// One annotation per object whose visible pixel count is at least
/// `min_visible_pixels`, in scene order.
std::vector<YoloAnnotation> annotate_frame(const Frame& frame, std::span<const SceneObject> scene,
                                           std::size_t min_visible_pixels = 9);

/// `<class> <cx> <cy> <w> <h>` per line, six decimals, LF terminated.
void write_label_file(std::span<const YoloAnnotation> annotations, std::ostream& sink);
void write_label_file(std::span<const YoloAnnotation> annotations, const std::filesystem::path& path);

/// Inverse of write_label_file. Throws ParseError with the line number.
std::vector<YoloAnnotation> parse_label_file(std::istream& source);
std::vector<YoloAnnotation> read_label_file(const std::filesystem::path& path);

/// classes.txt: one class name per line in id order.
void write_classes_file(const std::filesystem::path& path);

}  // namespace rustforge
