#include "sidebench/boundary.hpp"

#include <cmath>
#include <cstdlib>
#include <vector>

namespace sidebench {

Image<std::int64_t> squared_distance_transform(const Mask& edges) {
  const Eigen::Index rows = edges.rows();
  const Eigen::Index cols = edges.cols();
  // Larger than any in-image distance.
  const std::int64_t inf = rows + cols + 1;

  // Column pass: vertical distance to the nearest edge in the same column.
  Image<std::int64_t> g(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    g(0, c) = edges(0, c) ? 0 : inf;
    for (Eigen::Index r = 1; r < rows; ++r) g(r, c) = edges(r, c) ? 0 : g(r - 1, c) + 1;
    for (Eigen::Index r = rows - 2; r >= 0; --r) {
      if (g(r + 1, c) < g(r, c)) g(r, c) = g(r + 1, c) + 1;
    }
  }

  // Row pass: lower envelope of parabolas (u - i)^2 + g(i)^2.
  Image<std::int64_t> out(rows, cols);
  std::vector<std::int64_t> s(static_cast<std::size_t>(cols));
  std::vector<std::int64_t> t(static_cast<std::size_t>(cols));
  for (Eigen::Index r = 0; r < rows; ++r) {
    auto f = [&](std::int64_t x, std::int64_t i) { return (x - i) * (x - i) + g(r, i) * g(r, i); };
    auto sep = [&](std::int64_t i, std::int64_t u) {
      // floor division; numerator may be negative.
      const std::int64_t num = u * u - i * i + g(r, u) * g(r, u) - g(r, i) * g(r, i);
      const std::int64_t den = 2 * (u - i);
      std::int64_t q = num / den;
      if ((num % den != 0) && ((num < 0) != (den < 0))) --q;
      return q;
    };
    std::int64_t q = 0;
    s[0] = 0;
    t[0] = 0;
    for (std::int64_t u = 1; u < cols; ++u) {
      while (q >= 0 && f(t[q], s[q]) > f(t[q], u)) --q;
      if (q < 0) {
        q = 0;
        s[0] = u;
      } else {
        const std::int64_t w = 1 + sep(s[q], u);
        if (w < cols) {
          ++q;
          s[q] = u;
          t[q] = w;
        }
      }
    }
    for (std::int64_t u = cols - 1; u >= 0; --u) {
      out(r, u) = f(u, s[q]);
      if (u == t[q]) --q;
    }
  }
  return out;
}

DistanceMap distance_transform(const EdgeMap& edges) {
  if (edges.bits.size() == 0 || !edges.bits.any()) throw Error("distance transform of an empty edge map");
  return DistanceMap{squared_distance_transform(edges.bits).cast<double>().sqrt()};
}

EdgeMap extract_depth_edges(const DepthMap& depth, double high_thresh, double low_thresh) {
  if (!(low_thresh > 0.0) || !(high_thresh >= low_thresh)) {
    throw Error("edge thresholds must satisfy 0 < low <= high");
  }
  const Eigen::Index rows = depth.height();
  const Eigen::Index cols = depth.width();
  Image<double> gx = Image<double>::Zero(rows, cols);
  Image<double> gy = Image<double>::Zero(rows, cols);
  Image<double> mag = Image<double>::Zero(rows, cols);
  Mask usable = Mask::Constant(rows, cols, false);
  for (Eigen::Index v = 1; v + 1 < rows; ++v) {
    for (Eigen::Index u = 1; u + 1 < cols; ++u) {
      if (!depth.valid(v, u) || !depth.valid(v, u - 1) || !depth.valid(v, u + 1) ||
          !depth.valid(v - 1, u) || !depth.valid(v + 1, u)) {
        continue;
      }
      gx(v, u) = 0.5 * (depth(v, u + 1) - depth(v, u - 1));
      gy(v, u) = 0.5 * (depth(v + 1, u) - depth(v - 1, u));
      mag(v, u) = std::hypot(gx(v, u), gy(v, u));
      usable(v, u) = true;
    }
  }

  // Non-maximum suppression: strict against the neighbour on the negative
  // side of the direction, non-strict on the positive side, so plateaus of
  // equal magnitude keep exactly their first pixel.
  constexpr double tan22 = 0.41421356237309503;
  Mask candidate = Mask::Constant(rows, cols, false);
  for (Eigen::Index v = 1; v + 1 < rows; ++v) {
    for (Eigen::Index u = 1; u + 1 < cols; ++u) {
      if (!usable(v, u) || !(mag(v, u) >= low_thresh)) continue;
      const double ax = std::abs(gx(v, u));
      const double ay = std::abs(gy(v, u));
      int du = 0;
      int dv = 0;
      if (ay <= tan22 * ax) {
        du = 1;
      } else if (ax <= tan22 * ay) {
        dv = 1;
      } else if ((gx(v, u) > 0) == (gy(v, u) > 0)) {
        du = 1;
        dv = 1;
      } else {
        du = -1;
        dv = 1;
      }
      const double prev = mag(v - dv, u - du);
      const double next = mag(v + dv, u + du);
      candidate(v, u) = mag(v, u) > prev && mag(v, u) >= next;
    }
  }

  EdgeMap out{Mask::Constant(rows, cols, false)};
  std::vector<Eigen::Index> stack;
  for (Eigen::Index v = 0; v < rows; ++v) {
    for (Eigen::Index u = 0; u < cols; ++u) {
      if (candidate(v, u) && mag(v, u) >= high_thresh && !out.bits(v, u)) {
        out.bits(v, u) = true;
        stack.push_back(v * cols + u);
      }
    }
  }
  while (!stack.empty()) {
    const Eigen::Index idx = stack.back();
    stack.pop_back();
    const Eigen::Index v = idx / cols;
    const Eigen::Index u = idx % cols;
    for (Eigen::Index dv = -1; dv <= 1; ++dv) {
      for (Eigen::Index du = -1; du <= 1; ++du) {
        const Eigen::Index nv = v + dv;
        const Eigen::Index nu = u + du;
        if (nv < 0 || nu < 0 || nv >= rows || nu >= cols) continue;
        if (candidate(nv, nu) && !out.bits(nv, nu)) {
          out.bits(nv, nu) = true;
          stack.push_back(nv * cols + nu);
        }
      }
    }
  }
  return out;
}

namespace {

// Mean of `field` over `edges` pixels whose value is <= theta.
double truncated_mean(const Mask& edges, const Image<double>& field, double theta, long& counted,
                      bool& truncated_out) {
  double sum = 0.0;
  counted = 0;
  for (Eigen::Index i = 0; i < edges.size(); ++i) {
    if (!edges.data()[i]) continue;
    const double d = field.data()[i];
    if (d > theta) continue;
    sum += d;
    ++counted;
  }
  truncated_out = counted == 0;
  return truncated_out ? theta : sum / static_cast<double>(counted);
}

}  // namespace

DbeResult dbe(const EdgeMap& pred_edges, const EdgeMap& gt_edges, const MetricConfig& cfg) {
  require_same_size(pred_edges.width(), pred_edges.height(), gt_edges.width(), gt_edges.height(),
                    "predicted vs ground-truth edges");
  if (!(cfg.dt_truncation > 0.0)) throw Error("dt_truncation must be positive");
  if (!pred_edges.bits.any()) throw Error("predicted edge map is empty");
  if (!gt_edges.bits.any()) throw Error("ground-truth edge map is empty");
  const auto gt_dt = distance_transform(gt_edges);
  const auto pred_dt = distance_transform(pred_edges);
  DbeResult r;
  r.eps_acc = truncated_mean(pred_edges.bits, gt_dt.data, cfg.dt_truncation, r.counted_pred_edges,
                             r.acc_truncated_out);
  r.eps_comp = truncated_mean(gt_edges.bits, pred_dt.data, cfg.dt_truncation, r.counted_gt_edges,
                              r.comp_truncated_out);
  return r;
}

}  // namespace sidebench
