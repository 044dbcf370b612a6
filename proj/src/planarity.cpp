#include "sidebench/planarity.hpp"

#include <cmath>

namespace sidebench {

PlanarityResult planarity_error_prescaled(const DepthMap& scaled_pred, const DepthMap& gt,
                                          const Mask& valid, const SemanticMask& mask,
                                          const CameraIntrinsics& k, const MetricConfig& cfg) {
  require_same_size(mask.bits.cols(), mask.bits.rows(), gt.width(), gt.height(), "plane mask");
  const Mask region = mask.bits && valid;
  if (region.count() < 3) throw Error("plane mask selects fewer than 3 valid pixels");

  const auto pred_cloud = backproject(scaled_pred, k, region);
  const auto gt_cloud = backproject(gt, k, region);
  const auto pred_fit = fit_plane(pred_cloud, cfg.ransac);
  const auto gt_fit = fit_plane(gt_cloud, cfg.ransac);

  const Eigen::ArrayXd dist = signed_distances(pred_fit.plane, pred_cloud).transpose().array();
  double sum = 0.0;
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    if (pred_fit.inliers[static_cast<std::size_t>(i)]) sum += dist(i);
  }
  const double n = static_cast<double>(pred_fit.inlier_count);
  const double mean = sum / n;
  double var = 0.0;
  for (Eigen::Index i = 0; i < dist.size(); ++i) {
    if (pred_fit.inliers[static_cast<std::size_t>(i)]) var += (dist(i) - mean) * (dist(i) - mean);
  }

  PlanarityResult r;
  r.label = mask.label;
  r.instance_id = mask.instance_id;
  r.eps_plan = std::sqrt(var / n);
  r.eps_orie = normal_angle_deg(pred_fit.plane.normal, gt_fit.plane.normal);
  r.pred_plane = pred_fit.plane;
  r.gt_plane = gt_fit.plane;
  r.point_count = pred_cloud.size();
  return r;
}

PlanarityResult planarity_error(const DepthMap& pred, const DepthMap& gt, const SemanticMask& mask,
                                const CameraIntrinsics& k, const MetricConfig& cfg,
                                const Mask* invalid) {
  const Mask valid = valid_pixels(pred, gt, invalid);
  if (cfg.scaling_mode == ScalingMode::median_ratio) {
    const auto scaled = median_scale(pred, gt, valid);
    return planarity_error_prescaled(scaled.depth, gt, valid, mask, k, cfg);
  }
  return planarity_error_prescaled(pred, gt, valid, mask, k, cfg);
}

PlanarityAggregate aggregate_planarity(const std::vector<PlanarityResult>& results) {
  if (results.empty()) throw Error("no planarity results to aggregate");
  PlanarityAggregate agg;
  for (const auto& r : results) {
    for (auto* m : {&agg.combined, &agg.per_label[r.label]}) {
      m->eps_plan += r.eps_plan;
      m->eps_orie += r.eps_orie;
      ++m->count;
    }
  }
  auto finish = [](PlanarityMeans& m) {
    m.eps_plan /= static_cast<double>(m.count);
    m.eps_orie /= static_cast<double>(m.count);
  };
  finish(agg.combined);
  for (auto& [label, m] : agg.per_label) finish(m);
  return agg;
}

}  // namespace sidebench
