#include "rustforge/dataset_eval.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "rustforge/annotate.hpp"
#include "rustforge/errors.hpp"

namespace rustforge {

namespace fs = std::filesystem;

namespace {

template <typename T>
T parse_field(const std::string& field, const char* what, std::size_t line_no) {
  T value{};
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(std::string("malformed ") + what + " '" + field + "'", line_no);
  }
  return value;
}

}  // namespace

std::vector<Detection> parse_predictions(std::istream& source) {
  std::vector<Detection> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(source, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ss(line);
    std::vector<std::string> f;
    for (std::string tok; ss >> tok;) f.push_back(tok);
    if (f.empty() || f[0].starts_with('#')) continue;
    if (f.size() != 7) throw ParseError("expected 7 fields, got " + std::to_string(f.size()), line_no);
    Detection d;
    d.image_id = f[0];
    d.class_id = parse_field<int>(f[1], "class", line_no);
    d.confidence = parse_field<double>(f[2], "confidence", line_no);
    d.box = {parse_field<double>(f[3], "cx", line_no), parse_field<double>(f[4], "cy", line_no),
             parse_field<double>(f[5], "w", line_no), parse_field<double>(f[6], "h", line_no)};
    if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) throw ParseError("confidence outside [0, 1]", line_no);
    if (!(d.box.w >= 0.0 && d.box.h >= 0.0)) throw ParseError("negative box size", line_no);
    out.push_back(std::move(d));
  }
  if (source.bad()) throw IoError("error reading predictions");
  return out;
}

std::vector<Detection> read_predictions(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open predictions file '" + path.string() + "'");
  try {
    return parse_predictions(in);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_predictions(const std::vector<Detection>& dets, std::ostream& sink) {
  char buf[96];
  for (const Detection& d : dets) {
    std::snprintf(buf, sizeof buf, " %d %.6f %.6f %.6f %.6f %.6f\n", d.class_id, d.confidence, d.box.cx, d.box.cy,
                  d.box.w, d.box.h);
    sink << d.image_id << buf;
  }
  if (!sink) throw IoError("failed to write predictions");
}

std::vector<GtBox> load_ground_truth(const fs::path& dataset_root) {
  const fs::path labels = dataset_root / "labels";
  if (!fs::is_directory(labels)) {
    throw IoError("'" + dataset_root.string() + "' has no labels/ directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(labels)) {
    if (entry.is_regular_file() && entry.path().extension() == ".txt") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  std::vector<GtBox> out;
  for (const fs::path& f : files) {
    for (const YoloAnnotation& a : read_label_file(f)) {
      out.push_back({f.stem().string(), a.class_id, {a.cx, a.cy, a.w, a.h}});
    }
  }
  return out;
}

}  // namespace rustforge
