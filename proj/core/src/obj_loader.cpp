#include <charconv>
#include <fstream>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "rustforge/errors.hpp"
#include "rustforge/geometry.hpp"

namespace rustforge {

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view field, std::size_t line_no) {
  double value = 0.0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ParseError("malformed number '" + std::string(field) + "'", line_no);
  }
  return value;
}

long parse_index_field(std::string_view field, std::size_t line_no) {
  long value = 0;
  const char* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc{} || ptr != end || value == 0) {
    throw ParseError("malformed index '" + std::string(field) + "'", line_no);
  }
  return value;
}

/// Resolves a 1-based or negative (relative) OBJ index against `count`.
std::uint32_t resolve_index(long raw, std::size_t count, const char* what, std::size_t line_no) {
  const long resolved = raw > 0 ? raw - 1 : long(count) + raw;
  if (resolved < 0 || std::size_t(resolved) >= count) {
    throw IndexError(std::string(what) + " index " + std::to_string(raw) + " out of range (have " +
                         std::to_string(count) + ")",
                     line_no);
  }
  return static_cast<std::uint32_t>(resolved);
}

Vec3 parse_vec3(const std::vector<std::string_view>& f, std::size_t line_no) {
  if (f.size() < 4) throw ParseError("expected 3 coordinates", line_no);
  return {parse_real(f[1], line_no), parse_real(f[2], line_no), parse_real(f[3], line_no)};
}

}  // namespace

Mesh load_obj(std::istream& source) {
  Mesh mesh;
  std::string raw;
  std::size_t line_no = 0;
  std::vector<Corner> polygon;

  while (std::getline(source, raw)) {
    ++line_no;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto fields = split_ws(line);
    if (fields.empty()) continue;
    const std::string_view kind = fields[0];

    if (kind == "v") {
      mesh.positions.push_back(parse_vec3(fields, line_no));
    } else if (kind == "vt") {
      if (fields.size() < 3) throw ParseError("expected 2 texture coordinates", line_no);
      mesh.uvs.push_back({parse_real(fields[1], line_no), parse_real(fields[2], line_no)});
    } else if (kind == "vn") {
      const Vec3 n = parse_vec3(fields, line_no);
      const double len = n.length();
      if (!(len > 0.0)) throw ParseError("zero-length normal", line_no);
      mesh.normals.push_back(n / len);
    } else if (kind == "f") {
      if (fields.size() < 4) throw ParseError("face needs at least 3 corners", line_no);
      polygon.clear();
      for (std::size_t i = 1; i < fields.size(); ++i) {
        const std::string_view token = fields[i];
        const auto s1 = token.find('/');
        if (s1 == std::string_view::npos) throw MissingUvError("face corner lacks a vt index", line_no);
        const auto s2 = token.find('/', s1 + 1);
        const std::string_view pos_field = token.substr(0, s1);
        const std::string_view uv_field =
            token.substr(s1 + 1, s2 == std::string_view::npos ? std::string_view::npos : s2 - s1 - 1);
        if (uv_field.empty()) throw MissingUvError("face corner lacks a vt index", line_no);

        Corner c;
        c.position = resolve_index(parse_index_field(pos_field, line_no), mesh.positions.size(), "vertex",
                                   line_no);
        c.uv = resolve_index(parse_index_field(uv_field, line_no), mesh.uvs.size(), "texture", line_no);
        if (s2 != std::string_view::npos) {
          c.normal = resolve_index(parse_index_field(token.substr(s2 + 1), line_no), mesh.normals.size(),
                                   "normal", line_no);
        }
        polygon.push_back(c);
      }
      for (std::size_t i = 1; i + 1 < polygon.size(); ++i) {
        mesh.triangles.push_back({polygon[0], polygon[i], polygon[i + 1]});
      }
    }
    // mtllib, usemtl, o, g, s and anything else: ignored.
  }
  if (source.bad()) throw IoError("error while reading OBJ stream");
  return mesh;
}

Mesh load_obj_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open OBJ file '" + path + "'");
  return load_obj(in);
}

}  // namespace rustforge
