#pragma once

// Independent reference implementations used only by tests. They follow the
// textbook definitions pixel by pixel and share no code with the library's
// metric paths.

#include "sidebench/core.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

namespace oracle {

using sidebench::Image;
using sidebench::Mask;

struct Pair {
  std::vector<double> pred;
  std::vector<double> gt;
};

inline Pair valid_pairs(const Image<double>& pred, const Image<double>& gt, const Mask& valid) {
  Pair p;
  for (Eigen::Index r = 0; r < gt.rows(); ++r) {
    for (Eigen::Index c = 0; c < gt.cols(); ++c) {
      if (valid(r, c)) {
        p.pred.push_back(pred(r, c));
        p.gt.push_back(gt(r, c));
      }
    }
  }
  return p;
}

inline double rel(const Pair& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.gt.size(); ++i) s += std::fabs(p.pred[i] - p.gt[i]) / p.gt[i];
  return s / static_cast<double>(p.gt.size());
}

inline double srel(const Pair& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.gt.size(); ++i) s += std::pow(std::fabs(p.pred[i] - p.gt[i]), 2) / p.gt[i];
  return s / static_cast<double>(p.gt.size());
}

inline double rms(const Pair& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.gt.size(); ++i) s += std::pow(std::fabs(p.pred[i] - p.gt[i]), 2);
  return std::sqrt(s / static_cast<double>(p.gt.size()));
}

inline double log_rms(const Pair& p) {
  double s = 0;
  for (std::size_t i = 0; i < p.gt.size(); ++i) s += std::pow(std::fabs(std::log10(p.pred[i]) - std::log10(p.gt[i])), 2);
  return std::sqrt(s / static_cast<double>(p.gt.size()));
}

inline double delta(const Pair& p, double thr) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < p.gt.size(); ++i) {
    const double a = p.pred[i] / p.gt[i];
    const double b = p.gt[i] / p.pred[i];
    if ((a > b ? a : b) < thr) ++n;
  }
  return static_cast<double>(n) / static_cast<double>(p.gt.size());
}

/// O(n^2 m) nearest edge search; returns squared integer distances.
inline Image<std::int64_t> brute_force_sq_dt(const Mask& edges) {
  Image<std::int64_t> out(edges.rows(), edges.cols());
  for (Eigen::Index r = 0; r < edges.rows(); ++r) {
    for (Eigen::Index c = 0; c < edges.cols(); ++c) {
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      for (Eigen::Index er = 0; er < edges.rows(); ++er) {
        for (Eigen::Index ec = 0; ec < edges.cols(); ++ec) {
          if (!edges(er, ec)) continue;
          const std::int64_t d = (er - r) * (er - r) + (ec - c) * (ec - c);
          if (d < best) best = d;
        }
      }
      out(r, c) = best;
    }
  }
  return out;
}

/// Ray-plane intersection by solving [ray, -e1, -e2] t = p0 for a plane given
/// as a point p0 and two spanning directions; returns the hit point.
inline Eigen::Vector3d intersect(const Eigen::Vector3d& ray, const Eigen::Vector3d& p0, const Eigen::Vector3d& e1,
                                 const Eigen::Vector3d& e2) {
  Eigen::Matrix3d a;
  a << ray, -e1, -e2;
  const Eigen::Vector3d t = a.fullPivLu().solve(p0);
  return t(0) * ray;
}

/// Rotation taking +z-facing geometry to a random direction within max_deg
/// of the optical axis.
inline Eigen::Matrix3d random_tilt(std::mt19937_64& rng, double max_deg) {
  std::uniform_real_distribution<double> ang(0.0, max_deg * M_PI / 180.0);
  std::uniform_real_distribution<double> az(0.0, 2.0 * M_PI);
  const double a = az(rng);
  const Eigen::Vector3d axis(std::cos(a), std::sin(a), 0.0);
  return Eigen::AngleAxisd(ang(rng), axis).toRotationMatrix();
}

inline double angle_deg(const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
  return std::atan2(a.cross(b).norm(), a.dot(b)) * 180.0 / M_PI;
}

}  // namespace oracle
