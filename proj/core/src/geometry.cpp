#include "rustforge/geometry.hpp"

#include <algorithm>
#include <numbers>
#include <string>

#include "rustforge/errors.hpp"

namespace rustforge {

namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

Vec3 rotate(const Vec3& p, double yaw_deg, double pitch_deg, double roll_deg) {
  Vec3 r = p;
  if (roll_deg != 0.0) {
    const double c = std::cos(roll_deg * kDegToRad), s = std::sin(roll_deg * kDegToRad);
    r = {c * r.x - s * r.y, s * r.x + c * r.y, r.z};
  }
  if (pitch_deg != 0.0) {
    const double c = std::cos(pitch_deg * kDegToRad), s = std::sin(pitch_deg * kDegToRad);
    r = {r.x, c * r.y - s * r.z, s * r.y + c * r.z};
  }
  if (yaw_deg != 0.0) {
    const double c = std::cos(yaw_deg * kDegToRad), s = std::sin(yaw_deg * kDegToRad);
    r = {c * r.x + s * r.z, r.y, -s * r.x + c * r.z};
  }
  return r;
}

}  // namespace

Vec3 Transform::apply_point(const Vec3& p) const {
  return rotate(p * scale, yaw_deg, pitch_deg, roll_deg) + translation;
}

Vec3 Transform::apply_direction(const Vec3& d) const {
  return rotate(d, yaw_deg, pitch_deg, roll_deg);
}

void validate(const Mesh& mesh) {
  for (std::size_t i = 0; i < mesh.positions.size(); ++i) {
    if (!mesh.positions[i].is_finite()) {
      throw ArgumentError("mesh position " + std::to_string(i) + " is not finite");
    }
  }
  for (std::size_t i = 0; i < mesh.normals.size(); ++i) {
    if (std::abs(mesh.normals[i].length() - 1.0) > 1e-4) {
      throw ArgumentError("mesh normal " + std::to_string(i) + " is not unit length");
    }
  }
  for (std::size_t t = 0; t < mesh.triangles.size(); ++t) {
    for (const Corner& c : mesh.triangles[t]) {
      if (c.position >= mesh.positions.size() || c.uv >= mesh.uvs.size() ||
          (c.normal && *c.normal >= mesh.normals.size())) {
        throw ArgumentError("triangle " + std::to_string(t) + " has an out-of-range index");
      }
    }
  }
}

Mesh make_cylinder(double radius, double height, int segments) {
  if (!(radius > 0.0) || !(height > 0.0) || segments < 3) {
    throw ArgumentError("make_cylinder: need radius > 0, height > 0, segments >= 3");
  }
  const auto n = static_cast<std::uint32_t>(segments);
  const double half = height * 0.5;
  Mesh m;
  m.positions.reserve(2 * n + 2);
  m.normals.reserve(n + 2);

  // Positions: bottom ring [0, n), top ring [n, 2n), bottom center, top center.
  for (int ring = 0; ring < 2; ++ring) {
    const double y = ring == 0 ? -half : half;
    for (std::uint32_t i = 0; i < n; ++i) {
      const double theta = 2.0 * std::numbers::pi * double(i) / double(n);
      m.positions.push_back({radius * std::cos(theta), y, radius * std::sin(theta)});
    }
  }
  const std::uint32_t bottom_center = 2 * n;
  const std::uint32_t top_center = 2 * n + 1;
  m.positions.push_back({0.0, -half, 0.0});
  m.positions.push_back({0.0, half, 0.0});

  // Normals: one per side column, then the two cap normals.
  for (std::uint32_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * double(i) / double(n);
    m.normals.push_back({std::cos(theta), 0.0, std::sin(theta)});
  }
  const std::uint32_t down = n;
  const std::uint32_t up = n + 1;
  m.normals.push_back({0.0, -1.0, 0.0});
  m.normals.push_back({0.0, 1.0, 0.0});

  // Side UVs: (n + 1) columns so the seam gets u = 0 and u = 1, two rows.
  for (std::uint32_t row = 0; row < 2; ++row) {
    for (std::uint32_t i = 0; i <= n; ++i) {
      m.uvs.push_back({double(i) / double(n), double(row)});
    }
  }
  auto side_uv = [n](std::uint32_t column, std::uint32_t row) { return row * (n + 1) + column; };

  // Cap UVs: disk inscribed in the unit square, center last.
  const std::uint32_t cap_uv_base = static_cast<std::uint32_t>(m.uvs.size());
  for (std::uint32_t i = 0; i < n; ++i) {
    const double theta = 2.0 * std::numbers::pi * double(i) / double(n);
    m.uvs.push_back({0.5 + 0.5 * std::cos(theta), 0.5 + 0.5 * std::sin(theta)});
  }
  const std::uint32_t cap_uv_center = static_cast<std::uint32_t>(m.uvs.size());
  m.uvs.push_back({0.5, 0.5});

  m.triangles.reserve(4 * n);
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    const Corner b0{i, side_uv(i, 0), i};
    const Corner b1{j, side_uv(i + 1, 0), j};
    const Corner t0{n + i, side_uv(i, 1), i};
    const Corner t1{n + j, side_uv(i + 1, 1), j};
    m.triangles.push_back({b0, t0, b1});
    m.triangles.push_back({b1, t0, t1});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    m.triangles.push_back({Corner{top_center, cap_uv_center, up}, Corner{n + j, cap_uv_base + j, up},
                           Corner{n + i, cap_uv_base + i, up}});
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    const std::uint32_t j = (i + 1) % n;
    m.triangles.push_back({Corner{bottom_center, cap_uv_center, down}, Corner{i, cap_uv_base + i, down},
                           Corner{j, cap_uv_base + j, down}});
  }
  return m;
}

Aabb mesh_aabb(const Mesh& mesh, const Transform& transform) {
  if (mesh.positions.empty()) throw EmptyMeshError("mesh_aabb: mesh has no positions");
  const Vec3 first = transform.apply_point(mesh.positions.front());
  Aabb box{first, first};
  for (const Vec3& p : mesh.positions) {
    const Vec3 q = transform.apply_point(p);
    box.min = {std::min(box.min.x, q.x), std::min(box.min.y, q.y), std::min(box.min.z, q.z)};
    box.max = {std::max(box.max.x, q.x), std::max(box.max.y, q.y), std::max(box.max.z, q.z)};
  }
  return box;
}

}  // namespace rustforge
