#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace rustforge {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  constexpr bool operator==(const Vec3&) const = default;

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr Vec3 cross(const Vec3& o) const {
    return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
  }
  double length() const { return std::sqrt(dot(*this)); }
  Vec3 normalized() const { return *this / length(); }
  bool is_finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

struct Uv {
  double u = 0.0;
  double v = 0.0;
  constexpr bool operator==(const Uv&) const = default;
};

/// One triangle corner: indices into Mesh::positions / uvs / normals.
struct Corner {
  std::uint32_t position = 0;
  std::uint32_t uv = 0;
  std::optional<std::uint32_t> normal;
  constexpr bool operator==(const Corner&) const = default;
};

using Triangle = std::array<Corner, 3>;

struct Mesh {
  std::vector<Vec3> positions;
  std::vector<Uv> uvs;
  std::vector<Vec3> normals;
  std::vector<Triangle> triangles;
};

/// Throws ArgumentError describing the first violated Mesh invariant:
/// indices in range, finite positions, unit-length normals (1e-4).
void validate(const Mesh& mesh);

/// Uniform scale, then rotation (roll about Z, pitch about X, yaw about Y,
/// in that order, degrees), then translation.
struct Transform {
  Vec3 translation{};
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  double scale = 1.0;

  static Transform identity() { return {}; }
  static Transform translate(const Vec3& t) { return Transform{.translation = t}; }

  Vec3 apply_point(const Vec3& p) const;
  /// Rotation only; no scale or translation.
  Vec3 apply_direction(const Vec3& d) const;
};

struct Aabb {
  Vec3 min;
  Vec3 max;

  Vec3 center() const { return (min + max) * 0.5; }
  Vec3 extent() const { return max - min; }
};

/// Wavefront OBJ subset: v, vt, vn, f (v/vt and v/vt/vn corners).
/// Polygons are fan-triangulated; other record types are skipped.
Mesh load_obj(std::istream& source);
Mesh load_obj_file(const std::string& path);

/// Closed cylinder centered at the origin with its axis along +Y.
/// Produces 4 * segments triangles with outward winding.
Mesh make_cylinder(double radius, double height, int segments);

Aabb mesh_aabb(const Mesh& mesh, const Transform& transform = Transform::identity());

}  // namespace rustforge
