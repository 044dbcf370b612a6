#pragma once

#include "sidebench/core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <utility>
#include <vector>

namespace sidebench {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

/// Camera-frame points (+z forward) with the linear pixel index each came from.
template <typename Scalar>
struct PointCloud {
  Eigen::Matrix<Scalar, 3, Eigen::Dynamic> points;
  std::vector<Eigen::Index> origin;

  Eigen::Index size() const { return points.cols(); }
  bool empty() const { return points.cols() == 0; }
};

/// Plane normal . p + offset = 0 with a unit normal facing the camera, i.e.
/// offset > 0 for planes that do not pass through the origin.
template <typename Scalar>
struct Plane {
  Vec3<Scalar> normal = Vec3<Scalar>::UnitZ();
  Scalar offset = 0;

  /// Normalizes and applies the camera-facing sign convention.
  static Plane from_coefficients(const Vec3<Scalar>& n, Scalar d) {
    const Scalar len = n.norm();
    if (!(len > Scalar(0))) throw Error("plane normal must be non-zero");
    Plane p{n / len, d / len};
    if (p.offset < Scalar(0)) {
      p.normal = -p.normal;
      p.offset = -p.offset;
    }
    return p;
  }

  /// Plane through `point` with normal `n`.
  static Plane through(const Vec3<Scalar>& n, const Vec3<Scalar>& point) {
    const Vec3<Scalar> unit = n.normalized();
    return from_coefficients(unit, -unit.dot(point));
  }
};

using Planed = Plane<double>;
using PointCloudd = PointCloud<double>;
using Vec3d = Vec3<double>;

/// normal . p + offset; negative behind a camera-facing plane.
template <typename Scalar>
Scalar signed_distance(const Plane<Scalar>& plane, const Vec3<Scalar>& p) {
  return plane.normal.dot(p) + plane.offset;
}

template <typename Scalar>
Eigen::Matrix<Scalar, 1, Eigen::Dynamic> signed_distances(const Plane<Scalar>& plane,
                                                          const PointCloud<Scalar>& cloud) {
  return (plane.normal.transpose() * cloud.points).array() + plane.offset;
}

/// Angle between two unit normals in degrees, evaluated with atan2 so that
/// small angles keep full precision.
template <typename Scalar>
Scalar normal_angle_deg(const Vec3<Scalar>& a, const Vec3<Scalar>& b) {
  const Scalar s = a.cross(b).norm();
  const Scalar c = std::clamp(a.dot(b), Scalar(-1), Scalar(1));
  return std::atan2(s, c) * Scalar(180) / Scalar(EIGEN_PI);
}

/// Ray through pixel (u, v) with unit depth.
inline Vec3d pixel_ray(const CameraIntrinsics& k, double u, double v) {
  return {(u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0};
}

/// Lifts every valid pixel selected by `mask` to 3D, in row-major order.
inline PointCloudd backproject(const DepthMap& depth, const CameraIntrinsics& k, const Mask& mask) {
  require_same_size(mask.cols(), mask.rows(), depth.width(), depth.height(), "backprojection mask");
  k.check(depth.width(), depth.height());
  const Mask sel = mask && depth.valid_mask();
  PointCloudd cloud;
  cloud.points.resize(3, sel.count());
  cloud.origin.reserve(static_cast<std::size_t>(sel.count()));
  Eigen::Index n = 0;
  for (Eigen::Index v = 0; v < depth.height(); ++v) {
    for (Eigen::Index u = 0; u < depth.width(); ++u) {
      if (!sel(v, u)) continue;
      const double z = depth(v, u);
      cloud.points.col(n++) << z * (static_cast<double>(u) - k.cx) / k.fx,
          z * (static_cast<double>(v) - k.cy) / k.fy, z;
      cloud.origin.push_back(v * depth.width() + u);
    }
  }
  return cloud;
}

template <typename Scalar>
struct PlaneFit {
  Plane<Scalar> plane;
  std::vector<bool> inliers;
  Eigen::Index inlier_count = 0;
};

/// Total-least-squares plane of the selected columns: normal is the scatter
/// matrix eigenvector with the smallest eigenvalue, offset from the centroid.
template <typename Scalar>
Plane<Scalar> fit_plane_tls(const PointCloud<Scalar>& cloud, const std::vector<bool>& selected) {
  Vec3<Scalar> centroid = Vec3<Scalar>::Zero();
  Eigen::Index n = 0;
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    if (selected[static_cast<std::size_t>(i)]) {
      centroid += cloud.points.col(i);
      ++n;
    }
  }
  if (n < 3) throw Error("plane fit needs at least 3 points");
  centroid /= Scalar(n);
  Eigen::Matrix<Scalar, 3, 3> scatter = Eigen::Matrix<Scalar, 3, 3>::Zero();
  for (Eigen::Index i = 0; i < cloud.size(); ++i) {
    if (selected[static_cast<std::size_t>(i)]) {
      const Vec3<Scalar> d = cloud.points.col(i) - centroid;
      scatter.noalias() += d * d.transpose();
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Scalar, 3, 3>> eig(scatter);
  // Eigenvalues are sorted ascending.
  const auto& ev = eig.eigenvalues();
  if (!(ev(1) > std::numeric_limits<Scalar>::epsilon() * Scalar(64) * ev(2))) {
    throw Error("plane fit input is collinear");
  }
  const Vec3<Scalar> normal = eig.eigenvectors().col(0);
  return Plane<Scalar>::from_coefficients(normal, -normal.dot(centroid));
}

/// RANSAC over 3-point samples followed by TLS refinement on the consensus
/// set. Deterministic for a given seed.
template <typename Scalar>
PlaneFit<Scalar> fit_plane(const PointCloud<Scalar>& cloud, const RansacConfig& cfg) {
  const Eigen::Index n = cloud.size();
  if (n < 3) throw Error("plane fit needs at least 3 points");
  if (cfg.iterations <= 0 || !(cfg.inlier_threshold > 0)) throw Error("invalid RANSAC parameters");

  // Rejects collinear input up front.
  fit_plane_tls(cloud, std::vector<bool>(static_cast<std::size_t>(n), true));

  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<Eigen::Index> pick(0, n - 1);
  const Scalar thr = static_cast<Scalar>(cfg.inlier_threshold);

  Plane<Scalar> best;
  Eigen::Index best_count = -1;
  Scalar best_cost = std::numeric_limits<Scalar>::infinity();
  for (int it = 0; it < cfg.iterations; ++it) {
    const Eigen::Index a = pick(rng);
    const Eigen::Index b = pick(rng);
    const Eigen::Index c = pick(rng);
    if (a == b || a == c || b == c) continue;
    const Vec3<Scalar> pa = cloud.points.col(a);
    const Vec3<Scalar> n3 = (cloud.points.col(b) - pa).cross(cloud.points.col(c) - pa);
    const Scalar len = n3.norm();
    if (!(len > Scalar(0))) continue;
    const Vec3<Scalar> unit = n3 / len;
    const Scalar c0 = unit.dot(pa);
    // Single pass; stops once this candidate can no longer reach best_count,
    // which cannot change the winner.
    Eigen::Index count = 0;
    Scalar cost = 0;
    bool hopeless = false;
    const Scalar* p = cloud.points.data();
    for (Eigen::Index i = 0; i < n; ++i, p += 3) {
      const Scalar d = std::abs(unit(0) * p[0] + unit(1) * p[1] + unit(2) * p[2] - c0);
      if (d <= thr) {
        ++count;
        cost += d * d;
      } else if ((i & 1023) == 0 && count + (n - i - 1) < best_count) {
        hopeless = true;
        break;
      }
    }
    if (hopeless) continue;
    if (count > best_count || (count == best_count && cost < best_cost)) {
      best_count = count;
      best_cost = cost;
      best = Plane<Scalar>::from_coefficients(unit, -unit.dot(pa));
    }
  }
  if (best_count < 3) throw Error("RANSAC found no plane with 3 or more inliers");

  PlaneFit<Scalar> fit;
  fit.inliers.resize(static_cast<std::size_t>(n));
  const auto dist = signed_distances(best, cloud).array().abs().eval();
  for (Eigen::Index i = 0; i < n; ++i) fit.inliers[static_cast<std::size_t>(i)] = dist(i) <= thr;
  fit.inlier_count = best_count;
  fit.plane = fit_plane_tls(cloud, fit.inliers);
  return fit;
}

struct ScaledDepth {
  double scale = 1.0;
  DepthMap depth;
};

/// Median of a non-empty sample; even counts average the two middle values.
inline double median(std::vector<double> values) {
  if (values.empty()) throw Error("median of an empty sample");
  const auto mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lower + upper);
}

/// Multiplies `pred` by the median of gt / pred over the valid pixels.
inline ScaledDepth median_scale(const DepthMap& pred, const DepthMap& gt, const Mask& valid) {
  require_same_size(pred.width(), pred.height(), gt.width(), gt.height(), "median scaling");
  require_same_size(valid.cols(), valid.rows(), gt.width(), gt.height(), "median scaling mask");
  std::vector<double> ratios;
  ratios.reserve(static_cast<std::size_t>(valid.count()));
  for (Eigen::Index i = 0; i < valid.size(); ++i) {
    if (!valid.data()[i]) continue;
    const double p = pred.values().data()[i];
    const double g = gt.values().data()[i];
    if (!(p > 0.0) || !(g > 0.0)) throw Error("median scaling over a non-positive depth");
    ratios.push_back(g / p);
  }
  if (ratios.empty()) throw Error("median scaling without valid pixels");
  const double s = median(std::move(ratios));
  return {s, DepthMap(pred.values() * s)};
}

}  // namespace sidebench
