#pragma once

#include "sidebench/core.hpp"

namespace sidebench {

/// Euclidean distance (pixels) to the nearest edge pixel.
struct DistanceMap {
  Image<double> data;

  Eigen::Index width() const { return data.cols(); }
  Eigen::Index height() const { return data.rows(); }
};

/// Exact squared Euclidean distance transform in integer arithmetic
/// (Meijster, Roerdink and Hesselink, 2000).
Image<std::int64_t> squared_distance_transform(const Mask& edges);

/// Exact Euclidean distance transform; throws for an empty edge map.
DistanceMap distance_transform(const EdgeMap& edges);

/// Gradient edge detector on depth: central differences, non-maximum
/// suppression along the quantized gradient direction, hysteresis with
/// 8-connected linking. Pixels touching invalid depth never become edges.
EdgeMap extract_depth_edges(const DepthMap& depth, double high_thresh, double low_thresh);

struct DbeResult {
  double eps_acc = 0.0;   // pixels
  double eps_comp = 0.0;  // pixels
  long counted_pred_edges = 0;
  long counted_gt_edges = 0;
  // Set when no edge survived truncation; the error is then reported as theta.
  bool acc_truncated_out = false;
  bool comp_truncated_out = false;
};

/// Truncated chamfer errors between edge maps. Accuracy averages the
/// ground-truth distance field over predicted edges, completeness the
/// predicted distance field over ground-truth edges; distances above
/// cfg.dt_truncation are excluded from both sum and count.
DbeResult dbe(const EdgeMap& pred_edges, const EdgeMap& gt_edges, const MetricConfig& cfg);

}  // namespace sidebench
