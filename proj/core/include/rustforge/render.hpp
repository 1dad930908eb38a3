#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "rustforge/geometry.hpp"
#include "rustforge/image.hpp"
#include "rustforge/texture.hpp"

namespace rustforge {

struct Camera {
  Vec3 position{0.0, 0.0, 5.0};
  Vec3 look_at{};
  Vec3 up{0.0, 1.0, 0.0};
  double vfov_deg = 45.0;
  double near = 0.05;
  double far = 100.0;

  /// Throws ArgumentError on a degenerate camera.
  void validate() const;
};

struct DirectionalLight {
  /// Unit vector pointing from the light toward the scene.
  Vec3 direction{0.0, -1.0, 0.0};
  double intensity = 1.0;
  double ambient = 0.3;

  void validate() const;
};

using ObjectId = std::uint16_t;

struct SceneObject {
  std::shared_ptr<const Mesh> mesh;
  std::shared_ptr<const TextureImage> texture;
  Transform transform;
  RustClass cls = RustClass::Default;
  ObjectId id = 0;
};

struct Resolution {
  int width = 640;
  int height = 480;
  bool operator==(const Resolution&) const = default;
};

/// Per-pixel winning object id.
class IdMap {
public:
  IdMap(int width, int height) : width_(width), height_(height), ids_(std::size_t(width) * std::size_t(height), kEmpty) {}

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }

  std::optional<ObjectId> at(int x, int y) const {
    const std::int32_t v = ids_[std::size_t(y) * std::size_t(width_) + std::size_t(x)];
    if (v == kEmpty) return std::nullopt;
    return static_cast<ObjectId>(v);
  }
  void set(int x, int y, std::optional<ObjectId> id) {
    ids_[std::size_t(y) * std::size_t(width_) + std::size_t(x)] = id ? std::int32_t(*id) : kEmpty;
  }

  bool operator==(const IdMap&) const = default;

private:
  static constexpr std::int32_t kEmpty = -1;
  int width_;
  int height_;
  std::vector<std::int32_t> ids_;
};

struct Frame {
  TextureImage color;
  IdMap ids;
  /// View-axis depth of the winning fragment; +inf where empty.
  std::vector<double> depth;
};

struct ScreenPoint {
  double x = 0.0;
  double y = 0.0;
  double depth = 0.0;
};

/// Perspective projection to pixel coordinates: (0, 0) is the top-left
/// corner of the top-left pixel, y grows downward. Empty when `p` lies in
/// front of the near plane from the camera's point of view (i.e. behind it).
std::optional<ScreenPoint> project(const Camera& camera, Resolution resolution, const Vec3& p);

inline constexpr Rgb8 kDefaultBackground{110, 110, 110};

/// Z-buffered, perspective-correct textured rasterization with flat
/// Lambert shading. Throws SceneError before drawing if an object lacks a
/// mesh or texture or ids collide.
Frame render(std::span<const SceneObject> scene, const Camera& camera, const DirectionalLight& light,
             Resolution resolution, Rgb8 background = kDefaultBackground);

}  // namespace rustforge
