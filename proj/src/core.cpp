#include "sidebench/core.hpp"

#include <algorithm>
#include <cmath>

namespace sidebench {

namespace {

double normalize_depth(double z) {
  return (std::isfinite(z) && z > 0.0) ? z : DepthMap::invalid_marker();
}

}  // namespace

DepthMap::DepthMap(Eigen::Index width, Eigen::Index height)
    : values_(Image<double>::Constant(height, width, invalid_marker())) {
  if (width <= 0 || height <= 0) throw Error("depth map must have positive dimensions");
}

DepthMap::DepthMap(Image<double> values) : values_(std::move(values)) {
  if (values_.rows() <= 0 || values_.cols() <= 0) {
    throw Error("depth map must have positive dimensions");
  }
  values_ = values_.unaryExpr(&normalize_depth);
}

void DepthMap::set(Eigen::Index v, Eigen::Index u, double depth) {
  values_(v, u) = normalize_depth(depth);
}

Mask DepthMap::valid_mask() const { return values_.isNaN() == false; }

RgbImage::RgbImage(Eigen::Index width, Eigen::Index height) {
  if (width <= 0 || height <= 0) throw Error("image must have positive dimensions");
  for (auto& c : channels_) c = Image<double>::Zero(height, width);
}

RgbImage::RgbImage(Image<double> r, Image<double> g, Image<double> b)
    : channels_{std::move(r), std::move(g), std::move(b)} {
  check();
}

void RgbImage::check() const {
  if (width() <= 0 || height() <= 0) throw Error("image must have positive dimensions");
  for (const auto& c : channels_) {
    require_same_size(c.cols(), c.rows(), width(), height(), "rgb channels");
    if (!((c >= 0.0) && (c <= 1.0)).all()) throw Error("rgb values must lie in [0,1]");
  }
}

bool operator==(const RgbImage& a, const RgbImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) return false;
  for (int c = 0; c < 3; ++c) {
    if (!(a.channels_[c] == b.channels_[c]).all()) return false;
  }
  return true;
}

std::string_view to_string(MaskLabel label) {
  switch (label) {
    case MaskLabel::wall: return "wall";
    case MaskLabel::floor: return "floor";
    case MaskLabel::table: return "table";
    case MaskLabel::transparent: return "transparent";
    case MaskLabel::invalid: return "invalid";
  }
  return "invalid";
}

std::optional<MaskLabel> parse_mask_label(std::string_view name) {
  for (auto l : {MaskLabel::wall, MaskLabel::floor, MaskLabel::table, MaskLabel::transparent,
                 MaskLabel::invalid}) {
    if (to_string(l) == name) return l;
  }
  return std::nullopt;
}

std::string_view to_string(ScalingMode mode) {
  return mode == ScalingMode::none ? "none" : "median_ratio";
}

void CameraIntrinsics::check(Eigen::Index width, Eigen::Index height) const {
  if (!(fx > 0.0) || !(fy > 0.0)) throw Error("focal lengths must be positive");
  if (!(cx >= 0.0 && cx < static_cast<double>(width)) ||
      !(cy >= 0.0 && cy < static_cast<double>(height))) {
    throw Error("principal point outside the image");
  }
}

void MetricConfig::check() const {
  if (!(delta_base > 1.0)) throw Error("delta_base must exceed 1");
  if (!(bin_width > 0.0)) throw Error("bin_width must be positive");
  if (!(dt_truncation > 0.0)) throw Error("dt_truncation must be positive");
  if (!(dde_ref_depth > 0.0)) throw Error("dde_ref_depth must be positive");
  if (!(max_depth > 0.0)) throw Error("max_depth must be positive");
  if (ransac.iterations <= 0) throw Error("ransac iterations must be positive");
  if (!(ransac.inlier_threshold > 0.0)) throw Error("ransac inlier threshold must be positive");
  if (!(edge_low > 0.0) || !(edge_high >= edge_low)) {
    throw Error("edge thresholds must satisfy 0 < low <= high");
  }
}

CameraIntrinsics resolve_intrinsics(const MetricConfig& cfg, Eigen::Index width,
                                    Eigen::Index height) {
  // Unset focal lengths fall back to a 525 px Kinect-class camera scaled to
  // a 640 px wide sensor.
  const double default_f = 525.0 * static_cast<double>(width) / 640.0;
  CameraIntrinsics k = cfg.intrinsics;
  if (!(k.fx > 0.0)) k.fx = default_f;
  if (!(k.fy > 0.0)) k.fy = k.fx;
  if (!(k.cx >= 0.0)) k.cx = 0.5 * static_cast<double>(width - 1);
  if (!(k.cy >= 0.0)) k.cy = 0.5 * static_cast<double>(height - 1);
  k.check(width, height);
  return k;
}

Mask valid_pixels(const DepthMap& pred, const DepthMap& gt, const Mask* invalid) {
  require_same_size(pred.width(), pred.height(), gt.width(), gt.height(), "prediction vs ground truth");
  Mask valid = pred.valid_mask() && gt.valid_mask();
  if (invalid != nullptr) {
    require_same_size(invalid->cols(), invalid->rows(), gt.width(), gt.height(), "invalid mask");
    valid = valid && !(*invalid);
  }
  return valid;
}

}  // namespace sidebench
