#include "rustforge/render.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <string>

#include "rustforge/errors.hpp"

namespace rustforge {

void Camera::validate() const {
  if (!position.is_finite() || !look_at.is_finite() || !up.is_finite()) {
    throw ArgumentError("camera vectors must be finite");
  }
  const Vec3 view = look_at - position;
  if (view.length() == 0.0) throw ArgumentError("camera position equals look_at");
  if (view.normalized().cross(up).length() < 1e-9 * std::max(1.0, up.length())) {
    throw ArgumentError("camera up vector is parallel to the view direction");
  }
  if (!(vfov_deg > 0.0 && vfov_deg < 180.0)) throw ArgumentError("camera vertical FOV must lie in (0, 180)");
  if (!(near > 0.0 && near < far)) throw ArgumentError("camera needs 0 < near < far");
}

void DirectionalLight::validate() const {
  if (std::abs(direction.length() - 1.0) > 1e-4) throw ArgumentError("light direction must be unit length");
  if (!(intensity >= 0.0)) throw ArgumentError("light intensity must be >= 0");
  if (!(ambient >= 0.0 && ambient <= 1.0)) throw ArgumentError("ambient must lie in [0, 1]");
}

namespace {

struct ViewBasis {
  Vec3 origin;
  Vec3 right;
  Vec3 up;
  Vec3 forward;
  double tan_half = 1.0;
  double aspect = 1.0;

  ViewBasis(const Camera& cam, Resolution res) : origin(cam.position) {
    forward = (cam.look_at - cam.position).normalized();
    right = forward.cross(cam.up).normalized();
    up = right.cross(forward);
    tan_half = std::tan(cam.vfov_deg * std::numbers::pi / 360.0);
    aspect = double(res.width) / double(res.height);
  }

  /// (right, up, forward) coordinates; z is the view-axis depth.
  Vec3 to_view(const Vec3& p) const {
    const Vec3 d = p - origin;
    return {d.dot(right), d.dot(up), d.dot(forward)};
  }
};

struct ScreenMap {
  double half_w, half_h, sx, sy;

  ScreenMap(const ViewBasis& b, Resolution res)
      : half_w(0.5 * res.width), half_h(0.5 * res.height), sx(1.0 / (b.tan_half * b.aspect)),
        sy(1.0 / b.tan_half) {}

  double x(const Vec3& v) const { return (v.x * sx / v.z + 1.0) * half_w; }
  double y(const Vec3& v) const { return (1.0 - v.y * sy / v.z) * half_h; }
};

struct ClipVertex {
  Vec3 view;
  Uv uv;
};

/// Clip plane a*x + b*y + c*z + d >= 0 in view space.
struct Plane {
  double a, b, c, d;
  double eval(const Vec3& v) const { return a * v.x + b * v.y + c * v.z + d; }
};

std::vector<ClipVertex> clip_polygon(std::vector<ClipVertex> poly, const Plane& plane) {
  std::vector<ClipVertex> out;
  out.reserve(poly.size() + 2);
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const ClipVertex& cur = poly[i];
    const ClipVertex& nxt = poly[(i + 1) % poly.size()];
    const double dc = plane.eval(cur.view);
    const double dn = plane.eval(nxt.view);
    if (dc >= 0.0) out.push_back(cur);
    if ((dc >= 0.0) != (dn >= 0.0)) {
      const double t = dc / (dc - dn);
      out.push_back({cur.view + (nxt.view - cur.view) * t,
                     {cur.uv.u + (nxt.uv.u - cur.uv.u) * t, cur.uv.v + (nxt.uv.v - cur.uv.v) * t}});
    }
  }
  return out;
}

// Sub-pixel precision of the rasterizer: 1/256 pixel.
constexpr std::int64_t kSubpixel = 256;

// Triangles are clipped to this multiple of the view frustum's half-width
// so that fixed-point edge products stay far from overflow.
constexpr double kGuardBand = 8.0;

struct RasterVertex {
  std::int64_t x, y;  // fixed point
  double inv_z;
  double u_over_z, v_over_z;
};

constexpr std::int64_t edge(const RasterVertex& a, const RasterVertex& b, std::int64_t px, std::int64_t py) {
  return (b.x - a.x) * (py - a.y) - (b.y - a.y) * (px - a.x);
}

// With positive-area orientation (y down) this selects top and left edges;
// a shared edge is owned by exactly one of its two triangles.
constexpr bool owns_boundary(const RasterVertex& a, const RasterVertex& b) {
  const std::int64_t dx = b.x - a.x, dy = b.y - a.y;
  return dy < 0 || (dy == 0 && dx > 0);
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

struct Targets {
  Frame& frame;
  std::vector<std::int32_t>& owner;
};

void raster_triangle(RasterVertex v0, RasterVertex v1, RasterVertex v2, const TextureImage& tex, double shade,
                     ObjectId id, Targets& t) {
  std::int64_t area = edge(v0, v1, v2.x, v2.y);
  if (area == 0) return;
  if (area < 0) {
    std::swap(v1, v2);
    area = -area;
  }
  const int w = t.frame.color.width();
  const int h = t.frame.color.height();
  const std::int64_t min_x = std::min({v0.x, v1.x, v2.x}), max_x = std::max({v0.x, v1.x, v2.x});
  const std::int64_t min_y = std::min({v0.y, v1.y, v2.y}), max_y = std::max({v0.y, v1.y, v2.y});
  const int x0 = int(std::max<std::int64_t>(0, floor_div(min_x, kSubpixel)));
  const int x1 = int(std::min<std::int64_t>(w - 1, floor_div(max_x, kSubpixel)));
  const int y0 = int(std::max<std::int64_t>(0, floor_div(min_y, kSubpixel)));
  const int y1 = int(std::min<std::int64_t>(h - 1, floor_div(max_y, kSubpixel)));

  const bool own0 = owns_boundary(v1, v2), own1 = owns_boundary(v2, v0), own2 = owns_boundary(v0, v1);
  const double inv_area = 1.0 / double(area);

  for (int py = y0; py <= y1; ++py) {
    const std::int64_t cy = std::int64_t(py) * kSubpixel + kSubpixel / 2;
    for (int px = x0; px <= x1; ++px) {
      const std::int64_t cx = std::int64_t(px) * kSubpixel + kSubpixel / 2;
      const std::int64_t e0 = edge(v1, v2, cx, cy);
      const std::int64_t e1 = edge(v2, v0, cx, cy);
      const std::int64_t e2 = edge(v0, v1, cx, cy);
      if (e0 < 0 || e1 < 0 || e2 < 0) continue;
      if ((e0 == 0 && !own0) || (e1 == 0 && !own1) || (e2 == 0 && !own2)) continue;

      const double b0 = double(e0) * inv_area, b1 = double(e1) * inv_area, b2 = double(e2) * inv_area;
      const double inv_z = b0 * v0.inv_z + b1 * v1.inv_z + b2 * v2.inv_z;
      const double z = 1.0 / inv_z;
      const std::size_t pi = std::size_t(py) * std::size_t(w) + std::size_t(px);
      const double current = t.frame.depth[pi];
      if (!(z < current || (z == current && std::int32_t(id) < t.owner[pi]))) continue;

      const double u = (b0 * v0.u_over_z + b1 * v1.u_over_z + b2 * v2.u_over_z) * z;
      const double v = (b0 * v0.v_over_z + b1 * v1.v_over_z + b2 * v2.v_over_z) * z;
      t.frame.depth[pi] = z;
      t.owner[pi] = id;
      t.frame.ids.set(px, py, id);
      t.frame.color.set(px, py, quantize(sample_bilinear(tex, u, v) * shade));
    }
  }
}

}  // namespace

std::optional<ScreenPoint> project(const Camera& camera, Resolution resolution, const Vec3& p) {
  camera.validate();
  const ViewBasis basis(camera, resolution);
  const Vec3 v = basis.to_view(p);
  if (v.z < camera.near) return std::nullopt;
  const ScreenMap map(basis, resolution);
  return ScreenPoint{map.x(v), map.y(v), v.z};
}

Frame render(std::span<const SceneObject> scene, const Camera& camera, const DirectionalLight& light,
             Resolution resolution, Rgb8 background) {
  if (resolution.width < 1 || resolution.height < 1) throw ArgumentError("render: resolution must be positive");
  camera.validate();
  light.validate();
  std::set<ObjectId> ids;
  for (const SceneObject& obj : scene) {
    if (!obj.mesh) throw SceneError("scene object " + std::to_string(obj.id) + " has no mesh");
    if (!obj.texture) throw SceneError("scene object " + std::to_string(obj.id) + " has no texture");
    if (!ids.insert(obj.id).second) throw SceneError("duplicate scene object id " + std::to_string(obj.id));
    validate(*obj.mesh);
  }

  Frame frame{TextureImage(resolution.width, resolution.height, background),
              IdMap(resolution.width, resolution.height),
              std::vector<double>(std::size_t(resolution.width) * std::size_t(resolution.height),
                                  std::numeric_limits<double>::infinity())};
  std::vector<std::int32_t> owner(frame.depth.size(), std::numeric_limits<std::int32_t>::max());
  Targets targets{frame, owner};

  const ViewBasis basis(camera, resolution);
  const ScreenMap screen(basis, resolution);
  const double gx = kGuardBand * basis.tan_half * basis.aspect;
  const double gy = kGuardBand * basis.tan_half;
  const Plane planes[] = {
      {0.0, 0.0, 1.0, -camera.near},  // near
      {1.0, 0.0, gx, 0.0},            // left guard
      {-1.0, 0.0, gx, 0.0},           // right guard
      {0.0, 1.0, gy, 0.0},            // bottom guard
      {0.0, -1.0, gy, 0.0},           // top guard
  };
  const Vec3 toward_light = -light.direction;

  for (const SceneObject& obj : scene) {
    const Mesh& mesh = *obj.mesh;
    std::vector<Vec3> world(mesh.positions.size());
    for (std::size_t i = 0; i < world.size(); ++i) world[i] = obj.transform.apply_point(mesh.positions[i]);

    for (const Triangle& tri : mesh.triangles) {
      const Vec3& a = world[tri[0].position];
      const Vec3& b = world[tri[1].position];
      const Vec3& c = world[tri[2].position];
      const Vec3 n = (b - a).cross(c - a);
      const double len = n.length();
      if (!(len > 0.0)) continue;
      const double lambert = std::max(0.0, (n / len).dot(toward_light));
      const double shade = std::clamp(light.ambient + light.intensity * lambert, 0.0, 1.0);

      std::vector<ClipVertex> poly;
      poly.reserve(8);
      for (const Corner& corner : tri) {
        poly.push_back({basis.to_view(world[corner.position]), mesh.uvs[corner.uv]});
      }
      for (const Plane& plane : planes) {
        poly = clip_polygon(std::move(poly), plane);
        if (poly.size() < 3) break;
      }
      if (poly.size() < 3) continue;

      std::vector<RasterVertex> rv;
      rv.reserve(poly.size());
      for (const ClipVertex& cv : poly) {
        const double inv_z = 1.0 / cv.view.z;
        rv.push_back({std::llround(screen.x(cv.view) * double(kSubpixel)),
                      std::llround(screen.y(cv.view) * double(kSubpixel)), inv_z, cv.uv.u * inv_z,
                      cv.uv.v * inv_z});
      }
      for (std::size_t i = 1; i + 1 < rv.size(); ++i) {
        raster_triangle(rv[0], rv[i], rv[i + 1], *obj.texture, shade, obj.id, targets);
      }
    }
  }
  return frame;
}

}  // namespace rustforge
