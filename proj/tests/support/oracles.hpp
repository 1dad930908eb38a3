#pragma once

// Reference implementations used only by tests. They are written
// independently of the library code paths they check.

#include <map>
#include <optional>
#include <vector>

#include "rustforge/metrics.hpp"
#include "rustforge/render.hpp"

namespace rustforge::oracle {

/// Pixel-counting IoU on a `cells` x `cells` grid over [0,1]^2.
double grid_iou(const NormBox& a, const NormBox& b, int cells);

struct ReferenceEval {
  /// AP per class id for classes with ground truth or detections.
  std::map<int, double> ap;
  double map50 = 0.0;
};

/// Brute-force AP: explicit PR table, envelope taken per recall level.
ReferenceEval reference_evaluate(const std::vector<GtBox>& gts, const std::vector<Detection>& dets,
                                 int num_classes, double iou_threshold);

/// AP from explicit flags, O(n^2) envelope.
double reference_ap(const std::vector<bool>& flags, int num_gt);

struct WorldTriangle {
  Vec3 a, b, c;
  ObjectId id = 0;
};

struct RayHit {
  ObjectId id = 0;
  double depth = 0.0;
  /// Smallest barycentric coordinate of the hit; small means near an edge.
  double margin = 0.0;
};

/// For the ray through the center of pixel (x, y), every triangle it hits.
std::vector<RayHit> cast_pixel(const Camera& camera, Resolution res, int x, int y,
                               const std::vector<WorldTriangle>& tris);

/// Smallest |barycentric margin| of the pixel-center ray against any triangle
/// plane in front of the camera, hit or miss. Infinity when there is none.
double edge_clearance(const Camera& camera, Resolution res, int x, int y, const std::vector<WorldTriangle>& tris);

/// Hand-rolled look-at projection (no shared code with the renderer).
std::optional<ScreenPoint> reference_project(const Camera& camera, Resolution res, const Vec3& p);

}  // namespace rustforge::oracle
