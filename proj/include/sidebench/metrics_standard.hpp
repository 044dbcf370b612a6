#pragma once

#include "sidebench/core.hpp"

#include <array>
#include <optional>
#include <vector>

namespace sidebench {

struct GlobalMetrics {
  double rel = 0.0;
  double srel = 0.0;
  double rms = 0.0;
  double log_rms = 0.0;  // base 10
  std::array<double, 3> delta{};
};

/// Fraction of valid pixels with max(y/y*, y*/y) < delta_base^i, i in 1..3.
double threshold_accuracy(const DepthMap& pred, const DepthMap& gt, const Mask& valid, int i,
                          const MetricConfig& cfg);
double rel_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid);
double srel_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid);
double rms_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid);
double log_rms_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid);

GlobalMetrics global_metrics(const DepthMap& pred, const DepthMap& gt, const Mask& valid,
                             const MetricConfig& cfg);

struct BinStats {
  double lower = 0.0;  // meters, inclusive
  double upper = 0.0;  // meters, exclusive
  long count = 0;
  // Absent for empty bins.
  std::optional<double> mean_rel;
  std::optional<double> std_rel;
  std::optional<double> mean_abs;
  std::optional<double> std_abs;
  std::optional<double> rms;

  double center() const { return 0.5 * (lower + upper); }
};

struct BinnedErrors {
  double bin_width = 1.0;
  std::vector<BinStats> bins;  // bin k covers [k w, (k+1) w)

  long total() const;
};

/// Per-pixel errors grouped by floor(gt / bin_width); population statistics.
BinnedErrors binned_errors(const DepthMap& pred, const DepthMap& gt, const Mask& valid,
                           const MetricConfig& cfg);

}  // namespace sidebench
