#include "rustforge/metrics.hpp"

#include <algorithm>
#include <string_view>
#include <utility>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "rustforge/errors.hpp"

namespace rustforge {

double iou(const NormBox& a, const NormBox& b) {
  const double ax0 = a.cx - a.w / 2, ax1 = a.cx + a.w / 2, ay0 = a.cy - a.h / 2, ay1 = a.cy + a.h / 2;
  const double bx0 = b.cx - b.w / 2, bx1 = b.cx + b.w / 2, by0 = b.cy - b.h / 2, by1 = b.cy + b.h / 2;
  const double iw = std::max(0.0, std::min(ax1, bx1) - std::max(ax0, bx0));
  const double ih = std::max(0.0, std::min(ay1, by1) - std::max(ay0, by0));
  const double inter = iw * ih;
  const double uni = (ax1 - ax0) * (ay1 - ay0) + (bx1 - bx0) * (by1 - by0) - inter;
  if (!(uni > 0.0)) return 0.0;
  return std::clamp(inter / uni, 0.0, 1.0);
}

std::map<int, ClassMatches> match_detections(const std::vector<Detection>& dets, const std::vector<GtBox>& gts,
                                             double iou_threshold) {
  if (!(iou_threshold > 0.0 && iou_threshold <= 1.0)) throw ArgumentError("IoU threshold must lie in (0, 1]");
  std::map<int, ClassMatches> out;
  for (const GtBox& g : gts) ++out[g.class_id].num_gt;

  std::map<int, std::vector<std::size_t>> det_by_class;
  for (std::size_t i = 0; i < dets.size(); ++i) det_by_class[dets[i].class_id].push_back(i);

  // Candidate ground truth per (class, image), in input order so ties keep the first box.
  std::map<std::pair<int, std::string_view>, std::vector<std::size_t>> gt_index;
  for (std::size_t gi = 0; gi < gts.size(); ++gi) gt_index[{gts[gi].class_id, gts[gi].image_id}].push_back(gi);
  const std::vector<std::size_t> none;

  std::vector<bool> matched(gts.size(), false);
  for (auto& [cls, order] : det_by_class) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return dets[a].confidence > dets[b].confidence; });
    ClassMatches& cm = out[cls];
    for (std::size_t di : order) {
      const Detection& d = dets[di];
      const auto it = gt_index.find({cls, d.image_id});
      double best = -1.0;
      std::size_t best_gt = gts.size();
      for (std::size_t gi : it == gt_index.end() ? none : it->second) {
        if (matched[gi]) continue;
        const double v = iou(d.box, gts[gi].box);
        if (v > best) {
          best = v;
          best_gt = gi;
        }
      }
      const bool tp = best_gt < gts.size() && best >= iou_threshold;
      if (tp) matched[best_gt] = true;
      cm.ranked.push_back({d.confidence, tp});
    }
  }
  return out;
}

std::optional<double> average_precision(const std::vector<bool>& true_positive, int num_gt) {
  if (num_gt < 0) throw ArgumentError("average_precision: num_gt must be >= 0");
  if (num_gt == 0) return true_positive.empty() ? std::nullopt : std::optional<double>(0.0);

  const std::size_t n = true_positive.size();
  std::vector<double> precision(n), recall(n);
  std::size_t tp = 0;
  for (std::size_t k = 0; k < n; ++k) {
    tp += true_positive[k] ? 1 : 0;
    precision[k] = double(tp) / double(k + 1);
    recall[k] = double(tp) / double(num_gt);
  }
  // Precision envelope: running maximum from the right.
  for (std::size_t k = n; k-- > 1;) precision[k - 1] = std::max(precision[k - 1], precision[k]);

  double ap = 0.0;
  double prev_recall = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (recall[k] > prev_recall) {
      ap += (recall[k] - prev_recall) * precision[k];
      prev_recall = recall[k];
    }
  }
  return ap;
}

std::vector<std::string> report_class_names() { return {"default (no rust)", "rust streaks", "complete rust"}; }

namespace {

struct OperatingPoint {
  double precision = 0.0;
  double recall = 0.0;
  double threshold = 0.0;
};

/// Max-F1 point over confidence thresholds; ties go to the lower threshold.
OperatingPoint best_f1(const std::vector<RankedMatch>& ranked, int num_gt) {
  OperatingPoint best;
  double best_f1 = -1.0;
  std::size_t tp = 0;
  for (std::size_t k = 0; k < ranked.size(); ++k) {
    tp += ranked[k].true_positive ? 1 : 0;
    if (k + 1 < ranked.size() && ranked[k + 1].confidence == ranked[k].confidence) continue;
    const double p = double(tp) / double(k + 1);
    const double r = num_gt > 0 ? double(tp) / double(num_gt) : 0.0;
    const double f1 = p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0;
    if (f1 >= best_f1) {
      best_f1 = f1;
      best = {p, r, ranked[k].confidence};
    }
  }
  return best;
}

}  // namespace

MetricsReport evaluate(const std::vector<GtBox>& gts, const std::vector<Detection>& dets,
                       const std::vector<std::string>& class_names, double iou_threshold) {
  const int n_classes = int(class_names.size());
  auto known = [n_classes](int id) { return id >= 0 && id < n_classes; };

  MetricsReport report;
  report.iou_threshold = iou_threshold;
  std::vector<GtBox> kept_gts;
  std::vector<Detection> kept_dets;
  for (const GtBox& g : gts) {
    if (known(g.class_id)) {
      kept_gts.push_back(g);
    } else {
      ++report.unknown_class_ground_truth;
    }
  }
  for (const Detection& d : dets) {
    if (known(d.class_id)) {
      kept_dets.push_back(d);
    } else {
      ++report.unknown_class_detections;
    }
  }

  const auto matches = match_detections(kept_dets, kept_gts, iou_threshold);
  int included = 0;
  for (int cls = 0; cls < n_classes; ++cls) {
    ClassMetrics m;
    m.class_id = cls;
    m.name = class_names[std::size_t(cls)];
    if (const auto it = matches.find(cls); it != matches.end()) {
      const ClassMatches& cm = it->second;
      m.num_gt = cm.num_gt;
      m.num_detections = int(cm.ranked.size());
      std::vector<bool> flags;
      flags.reserve(cm.ranked.size());
      for (const RankedMatch& r : cm.ranked) flags.push_back(r.true_positive);
      if (const auto ap = average_precision(flags, cm.num_gt)) {
        m.included = true;
        m.ap50 = *ap;
        const OperatingPoint op = best_f1(cm.ranked, cm.num_gt);
        m.precision = op.precision;
        m.recall = op.recall;
        m.threshold = op.threshold;
      }
    }
    if (m.included) {
      ++included;
      report.precision += m.precision;
      report.recall += m.recall;
      report.map50 += m.ap50;
    }
    report.classes.push_back(std::move(m));
  }
  if (included > 0) {
    report.precision /= included;
    report.recall /= included;
    report.map50 /= included;
  }
  return report;
}

std::string format_report_table(const MetricsReport& report) {
  std::ostringstream out;
  char cell[64];
  auto col = [&](const std::string& s, int width) {
    out << s;
    for (int i = int(s.size()); i < width; ++i) out << ' ';
  };
  constexpr int kLabel = 11, kCol = 19;
  col("Metrics", kLabel);
  for (const ClassMetrics& m : report.classes) col(m.name, kCol);
  out << "all\n";

  auto row = [&](const char* label, auto field, double all) {
    col(label, kLabel);
    for (const ClassMetrics& m : report.classes) {
      if (m.included) {
        std::snprintf(cell, sizeof cell, "%.3f", field(m));
        col(cell, kCol);
      } else {
        col("-", kCol);
      }
    }
    std::snprintf(cell, sizeof cell, "%.3f", all);
    out << cell << '\n';
  };
  row("Precision", [](const ClassMetrics& m) { return m.precision; }, report.precision);
  row("Recall", [](const ClassMetrics& m) { return m.recall; }, report.recall);
  row("mAP50", [](const ClassMetrics& m) { return m.ap50; }, report.map50);
  return out.str();
}

std::string report_to_json(const MetricsReport& report) {
  using nlohmann::json;
  json columns = json::array(), precision = json::array(), recall = json::array(), map50 = json::array();
  json classes = json::array();
  for (const ClassMetrics& m : report.classes) {
    columns.push_back(m.name);
    precision.push_back(m.included ? json(m.precision) : json(nullptr));
    recall.push_back(m.included ? json(m.recall) : json(nullptr));
    map50.push_back(m.included ? json(m.ap50) : json(nullptr));
    classes.push_back({{"class_id", m.class_id},
                       {"name", m.name},
                       {"num_gt", m.num_gt},
                       {"num_detections", m.num_detections},
                       {"included", m.included},
                       {"precision", m.precision},
                       {"recall", m.recall},
                       {"ap50", m.ap50},
                       {"threshold", m.threshold}});
  }
  columns.push_back("all");
  precision.push_back(report.precision);
  recall.push_back(report.recall);
  map50.push_back(report.map50);
  const json doc = {{"iou_threshold", report.iou_threshold},
                    {"columns", columns},
                    {"rows", {{"Precision", precision}, {"Recall", recall}, {"mAP50", map50}}},
                    {"classes", classes},
                    {"unknown_class_detections", report.unknown_class_detections},
                    {"unknown_class_ground_truth", report.unknown_class_ground_truth}};
  return doc.dump(2);
}

}  // namespace rustforge
