#include "sidebench/dde.hpp"

namespace sidebench {

namespace {

template <typename Behind>
DdeResult classify(const DepthMap& pred, const DepthMap& gt, const Mask& valid, const MetricConfig& cfg,
                   Behind&& behind) {
  require_same_size(pred.width(), pred.height(), gt.width(), gt.height(), "prediction vs ground truth");
  require_same_size(valid.cols(), valid.rows(), gt.width(), gt.height(), "validity mask");
  DdeResult r;
  r.ref_depth = cfg.dde_ref_depth;
  DepthMap scaled_storage;
  const DepthMap* p = &pred;
  if (cfg.scaling_mode == ScalingMode::median_ratio) {
    auto s = median_scale(pred, gt, valid);
    r.scale = s.scale;
    scaled_storage = std::move(s.depth);
    p = &scaled_storage;
  }
  long t = 0;
  long plus = 0;
  long minus = 0;
  for (Eigen::Index v = 0; v < gt.height(); ++v) {
    for (Eigen::Index u = 0; u < gt.width(); ++u) {
      if (!valid(v, u)) continue;
      if (!p->valid(v, u) || !gt.valid(v, u)) throw Error("validity mask selects an invalid depth");
      ++t;
      const bool pred_behind = behind(u, v, (*p)(v, u));
      const bool gt_behind = behind(u, v, gt(v, u));
      if (pred_behind && !gt_behind) ++plus;
      if (!pred_behind && gt_behind) ++minus;
    }
  }
  if (t == 0) throw Error("no valid pixels");
  const double total = static_cast<double>(t);
  r.eps_plus = static_cast<double>(plus) / total;
  r.eps_minus = static_cast<double>(minus) / total;
  r.eps0 = static_cast<double>(t - plus - minus) / total;
  return r;
}

}  // namespace

DdeResult dde(const DepthMap& pred, const DepthMap& gt, const Mask& valid, const MetricConfig& cfg) {
  if (!(cfg.dde_ref_depth > 0.0)) throw Error("dde_ref_depth must be positive");
  const double ref = cfg.dde_ref_depth;
  return classify(pred, gt, valid, cfg, [ref](Eigen::Index, Eigen::Index, double z) { return z > ref; });
}

DdeResult dde_about_plane(const DepthMap& pred, const DepthMap& gt, const Mask& valid,
                          const CameraIntrinsics& k, const Planed& reference, const MetricConfig& cfg) {
  k.check(gt.width(), gt.height());
  auto r = classify(pred, gt, valid, cfg, [&](Eigen::Index u, Eigen::Index v, double z) {
    const Vec3d p = z * pixel_ray(k, static_cast<double>(u), static_cast<double>(v));
    return signed_distance(reference, p) < 0.0;
  });
  r.ref_depth = reference.offset;
  return r;
}

}  // namespace sidebench
