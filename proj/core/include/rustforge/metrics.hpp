#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace rustforge {

/// Normalized center/size box.
struct NormBox {
  double cx = 0.0;
  double cy = 0.0;
  double w = 0.0;
  double h = 0.0;
};

struct GtBox {
  std::string image_id;
  int class_id = 0;
  NormBox box;
};

struct Detection {
  std::string image_id;
  int class_id = 0;
  NormBox box;
  double confidence = 0.0;
};

/// Intersection over union; 0 when the union is empty.
double iou(const NormBox& a, const NormBox& b);

struct RankedMatch {
  double confidence = 0.0;
  bool true_positive = false;
};

struct ClassMatches {
  /// Detections in descending confidence order (ties keep input order).
  std::vector<RankedMatch> ranked;
  int num_gt = 0;
};

/// Greedy confidence-ordered matching, per class.
std::map<int, ClassMatches> match_detections(const std::vector<Detection>& dets,
                                             const std::vector<GtBox>& gts,
                                             double iou_threshold = 0.5);

/// All-points interpolated AP. Empty when num_gt == 0 and there are no
/// detections; 0 when num_gt == 0 with detections. ArgumentError if num_gt < 0.
std::optional<double> average_precision(const std::vector<bool>& true_positive, int num_gt);

struct ClassMetrics {
  int class_id = 0;
  std::string name;
  int num_gt = 0;
  int num_detections = 0;
  /// False when the class has neither ground truth nor detections.
  bool included = false;
  double precision = 0.0;
  double recall = 0.0;
  double ap50 = 0.0;
  /// Confidence threshold of the reported operating point.
  double threshold = 0.0;
};

struct MetricsReport {
  double iou_threshold = 0.5;
  std::vector<ClassMetrics> classes;
  double precision = 0.0;
  double recall = 0.0;
  double map50 = 0.0;
  /// Detections whose class id was outside the named classes.
  int unknown_class_detections = 0;
  int unknown_class_ground_truth = 0;
};

/// Table row labels: "default (no rust)", "rust streaks", "complete rust".
std::vector<std::string> report_class_names();

/// Per-class AP plus precision/recall at each class's max-F1 threshold;
/// the aggregate row averages over included classes.
MetricsReport evaluate(const std::vector<GtBox>& gts, const std::vector<Detection>& dets,
                       const std::vector<std::string>& class_names = report_class_names(),
                       double iou_threshold = 0.5);

/// Precision / Recall / mAP50 rows against class columns plus "all".
std::string format_report_table(const MetricsReport& report);
std::string report_to_json(const MetricsReport& report);

}  // namespace rustforge
