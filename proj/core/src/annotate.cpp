#include "rustforge/annotate.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rustforge/errors.hpp"
#include "rustforge/texture.hpp"

namespace rustforge {

bool is_valid(const YoloAnnotation& a, double tol) {
  if (!class_from_id(a.class_id)) return false;
  auto in_unit = [tol](double v) { return v >= -tol && v <= 1.0 + tol; };
  auto positive = [tol](double v) { return v > 0.0 && v <= 1.0 + tol; };
  return positive(a.w) && positive(a.h) && positive(a.cx) && positive(a.cy) && in_unit(a.cx - a.w / 2) &&
         in_unit(a.cx + a.w / 2) && in_unit(a.cy - a.h / 2) && in_unit(a.cy + a.h / 2);
}

std::optional<PixelBox> bbox_from_idmap(const Frame& frame, ObjectId id) {
  const IdMap& ids = frame.ids;
  std::optional<PixelBox> box;
  for (int y = 0; y < ids.height(); ++y) {
    for (int x = 0; x < ids.width(); ++x) {
      if (ids.at(x, y) != id) continue;
      if (!box) {
        box = PixelBox{x, y, x, y};
      } else {
        box->x_min = std::min(box->x_min, x);
        box->x_max = std::max(box->x_max, x);
        box->y_max = y;  // rows are scanned in increasing order
      }
    }
  }
  return box;
}

std::size_t visible_pixel_count(const Frame& frame, ObjectId id) {
  std::size_t n = 0;
  for (int y = 0; y < frame.ids.height(); ++y) {
    for (int x = 0; x < frame.ids.width(); ++x) n += frame.ids.at(x, y) == id ? 1 : 0;
  }
  return n;
}

YoloAnnotation to_yolo(const PixelBox& b, Resolution res, int class_id) {
  const double W = res.width, H = res.height;
  return {class_id, double(b.x_min + b.x_max + 1) / (2.0 * W), double(b.y_min + b.y_max + 1) / (2.0 * H),
          double(b.x_max - b.x_min + 1) / W, double(b.y_max - b.y_min + 1) / H};
}

PixelBox to_pixel(const YoloAnnotation& a, Resolution res) {
  const double W = res.width, H = res.height;
  const long wpx = std::lround(a.w * W);
  const long hpx = std::lround(a.h * H);
  const long x_min = std::lround(a.cx * W - a.w * W / 2.0);
  const long y_min = std::lround(a.cy * H - a.h * H / 2.0);
  return {int(x_min), int(y_min), int(x_min + wpx - 1), int(y_min + hpx - 1)};
}

std::vector<YoloAnnotation> annotate_frame(const Frame& frame, std::span<const SceneObject> scene,
                                           std::size_t min_visible_pixels) {
  std::vector<YoloAnnotation> out;
  const Resolution res{frame.ids.width(), frame.ids.height()};
  for (const SceneObject& obj : scene) {
    if (visible_pixel_count(frame, obj.id) < min_visible_pixels) continue;
    if (const auto box = bbox_from_idmap(frame, obj.id)) out.push_back(to_yolo(*box, res, class_id(obj.cls)));
  }
  return out;
}

void write_label_file(std::span<const YoloAnnotation> annotations, std::ostream& sink) {
  char line[160];
  for (const YoloAnnotation& a : annotations) {
    const int n = std::snprintf(line, sizeof line, "%d %.6f %.6f %.6f %.6f\n", a.class_id, a.cx, a.cy, a.w, a.h);
    sink.write(line, n);
  }
  if (!sink) throw IoError("failed to write label stream");
}

void write_label_file(std::span<const YoloAnnotation> annotations, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_label_file(annotations, out);
}

namespace {

template <typename T>
T parse_field(const std::string& field, std::size_t line_no) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) throw ParseError("malformed field '" + field + "'", line_no);
  return value;
}

}  // namespace

std::vector<YoloAnnotation> parse_label_file(std::istream& source) {
  std::vector<YoloAnnotation> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::vector<std::string> fields;
    for (std::string f; ss >> f;) fields.push_back(f);
    if (fields.empty()) continue;
    if (fields.size() != 5) throw ParseError("expected 5 fields, got " + std::to_string(fields.size()), line_no);
    out.push_back({parse_field<int>(fields[0], line_no), parse_field<double>(fields[1], line_no),
                   parse_field<double>(fields[2], line_no), parse_field<double>(fields[3], line_no),
                   parse_field<double>(fields[4], line_no)});
  }
  return out;
}

std::vector<YoloAnnotation> read_label_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open label file '" + path.string() + "'");
  try {
    return parse_label_file(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_classes_file(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  for (RustClass c : kAllRustClasses) out << class_name(c) << '\n';
  if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace rustforge
