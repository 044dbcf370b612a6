#pragma once

#include "sidebench/geometry.hpp"

namespace sidebench {

struct DdeResult {
  double eps0 = 0.0;
  double eps_plus = 0.0;   // predicted behind the reference, truly in front (too far)
  double eps_minus = 0.0;  // predicted in front, truly behind (too close)
  double ref_depth = 0.0;
  double scale = 1.0;      // median scale applied to the prediction
};

/// Directed depth error against the fronto-parallel plane z = cfg.dde_ref_depth.
/// A pixel is behind iff its depth exceeds the reference; ties count as in front.
DdeResult dde(const DepthMap& pred, const DepthMap& gt, const Mask& valid, const MetricConfig& cfg);

/// General form against an arbitrary camera-facing reference plane. A point is
/// behind iff its signed distance is negative; zero counts as in front. The
/// prediction is scaled per cfg.scaling_mode as in dde().
DdeResult dde_about_plane(const DepthMap& pred, const DepthMap& gt, const Mask& valid,
                          const CameraIntrinsics& k, const Planed& reference, const MetricConfig& cfg);

}  // namespace sidebench
