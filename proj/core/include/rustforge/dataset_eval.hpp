#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "rustforge/metrics.hpp"

namespace rustforge {

/// `<image stem> <class> <conf> <cx> <cy> <w> <h>` per line; blank lines and
/// lines starting with '#' are skipped. Throws ParseError with line number.
std::vector<Detection> parse_predictions(std::istream& source);
std::vector<Detection> read_predictions(const std::filesystem::path& path);
void write_predictions(const std::vector<Detection>& dets, std::ostream& sink);

/// Reads every labels/<split>/<stem>.txt under a dataset root; image id = stem.
std::vector<GtBox> load_ground_truth(const std::filesystem::path& dataset_root);

}  // namespace rustforge
