#pragma once

#include "sidebench/geometry.hpp"

#include <map>
#include <vector>

namespace sidebench {

struct PlanarityResult {
  MaskLabel label = MaskLabel::wall;
  int instance_id = 0;
  double eps_plan = 0.0;  // meters
  double eps_orie = 0.0;  // degrees
  Planed pred_plane;
  Planed gt_plane;
  Eigen::Index point_count = 0;
};

/// Flatness and orientation error of one annotated planar region.
///
/// The prediction is median-scaled to the ground truth over all valid pixels
/// of the image (when cfg.scaling_mode says so), both masked regions are
/// lifted to 3D and fitted with RANSAC + TLS. eps_plan is the population
/// standard deviation of the predicted inliers' signed distances to their own
/// plane; eps_orie is the angle between the camera-facing normals.
PlanarityResult planarity_error(const DepthMap& pred, const DepthMap& gt, const SemanticMask& mask,
                                const CameraIntrinsics& k, const MetricConfig& cfg,
                                const Mask* invalid = nullptr);

/// Same as above with a precomputed validity field and (already scaled)
/// prediction, so several masks of one image share the scaling step.
PlanarityResult planarity_error_prescaled(const DepthMap& scaled_pred, const DepthMap& gt,
                                          const Mask& valid, const SemanticMask& mask,
                                          const CameraIntrinsics& k, const MetricConfig& cfg);

struct PlanarityMeans {
  double eps_plan = 0.0;
  double eps_orie = 0.0;
  long count = 0;
};

struct PlanarityAggregate {
  PlanarityMeans combined;
  std::map<MaskLabel, PlanarityMeans> per_label;
};

/// Unweighted means per label and over all instances.
PlanarityAggregate aggregate_planarity(const std::vector<PlanarityResult>& results);

}  // namespace sidebench
