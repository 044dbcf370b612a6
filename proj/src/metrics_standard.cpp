#include "sidebench/metrics_standard.hpp"

#include <algorithm>
#include <cmath>

namespace sidebench {

namespace {

// Calls f(pred, gt) for every valid pixel in row-major order; returns T.
template <typename F>
long for_each_valid(const DepthMap& pred, const DepthMap& gt, const Mask& valid, F&& f) {
  require_same_size(pred.width(), pred.height(), gt.width(), gt.height(), "prediction vs ground truth");
  require_same_size(valid.cols(), valid.rows(), gt.width(), gt.height(), "validity mask");
  long t = 0;
  const double* p = pred.values().data();
  const double* g = gt.values().data();
  for (Eigen::Index i = 0; i < valid.size(); ++i) {
    if (!valid.data()[i]) continue;
    if (!(p[i] > 0.0) || !(g[i] > 0.0)) throw Error("validity mask selects an invalid depth");
    f(p[i], g[i]);
    ++t;
  }
  if (t == 0) throw Error("no valid pixels");
  return t;
}

}  // namespace

double threshold_accuracy(const DepthMap& pred, const DepthMap& gt, const Mask& valid, int i,
                          const MetricConfig& cfg) {
  if (i < 1 || i > 3) throw Error("threshold index must be 1, 2 or 3");
  const double thr = std::pow(cfg.delta_base, i);
  long hits = 0;
  const long t = for_each_valid(pred, gt, valid, [&](double y, double ys) {
    if (std::max(y / ys, ys / y) < thr) ++hits;
  });
  return static_cast<double>(hits) / static_cast<double>(t);
}

double rel_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid) {
  double sum = 0.0;
  const long t = for_each_valid(pred, gt, valid, [&](double y, double ys) { sum += std::abs(y - ys) / ys; });
  return sum / static_cast<double>(t);
}

double srel_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid) {
  double sum = 0.0;
  const long t = for_each_valid(pred, gt, valid, [&](double y, double ys) { sum += (y - ys) * (y - ys) / ys; });
  return sum / static_cast<double>(t);
}

double rms_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid) {
  double sum = 0.0;
  const long t = for_each_valid(pred, gt, valid, [&](double y, double ys) { sum += (y - ys) * (y - ys); });
  return std::sqrt(sum / static_cast<double>(t));
}

double log_rms_error(const DepthMap& pred, const DepthMap& gt, const Mask& valid) {
  double sum = 0.0;
  const long t = for_each_valid(pred, gt, valid, [&](double y, double ys) {
    const double d = std::log10(y) - std::log10(ys);
    sum += d * d;
  });
  return std::sqrt(sum / static_cast<double>(t));
}

GlobalMetrics global_metrics(const DepthMap& pred, const DepthMap& gt, const Mask& valid,
                             const MetricConfig& cfg) {
  GlobalMetrics m;
  m.rel = rel_error(pred, gt, valid);
  m.srel = srel_error(pred, gt, valid);
  m.rms = rms_error(pred, gt, valid);
  m.log_rms = log_rms_error(pred, gt, valid);
  for (int i = 1; i <= 3; ++i) m.delta[static_cast<std::size_t>(i - 1)] = threshold_accuracy(pred, gt, valid, i, cfg);
  return m;
}

long BinnedErrors::total() const {
  long t = 0;
  for (const auto& b : bins) t += b.count;
  return t;
}

BinnedErrors binned_errors(const DepthMap& pred, const DepthMap& gt, const Mask& valid,
                           const MetricConfig& cfg) {
  if (!(cfg.bin_width > 0.0)) throw Error("bin_width must be positive");
  struct Acc {
    long n = 0;
    double rel = 0, rel2 = 0, abs = 0, abs2 = 0;
  };
  std::vector<Acc> acc;
  std::vector<std::pair<std::size_t, std::pair<double, double>>> samples;
  for_each_valid(pred, gt, valid, [&](double y, double ys) {
    const auto k = static_cast<std::size_t>(std::floor(ys / cfg.bin_width));
    if (k >= acc.size()) acc.resize(k + 1);
    const double e = std::abs(y - ys);
    auto& a = acc[k];
    ++a.n;
    a.rel += e / ys;
    a.abs += e;
    samples.push_back({k, {e / ys, e}});
  });
  BinnedErrors out;
  out.bin_width = cfg.bin_width;
  out.bins.resize(acc.size());
  std::vector<double> mean_rel(acc.size()), mean_abs(acc.size());
  for (std::size_t k = 0; k < acc.size(); ++k) {
    mean_rel[k] = acc[k].n ? acc[k].rel / static_cast<double>(acc[k].n) : 0.0;
    mean_abs[k] = acc[k].n ? acc[k].abs / static_cast<double>(acc[k].n) : 0.0;
  }
  // Second pass around the bin means keeps the deviations well conditioned.
  for (const auto& [k, s] : samples) {
    const double dr = s.first - mean_rel[k];
    const double da = s.second - mean_abs[k];
    acc[k].rel2 += dr * dr;
    acc[k].abs2 += da * da;
  }
  std::vector<double> sq(acc.size(), 0.0);
  for (const auto& [k, s] : samples) sq[k] += s.second * s.second;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    auto& b = out.bins[k];
    b.lower = static_cast<double>(k) * cfg.bin_width;
    b.upper = static_cast<double>(k + 1) * cfg.bin_width;
    b.count = acc[k].n;
    if (b.count == 0) continue;
    const double n = static_cast<double>(b.count);
    b.mean_rel = mean_rel[k];
    b.std_rel = std::sqrt(acc[k].rel2 / n);
    b.mean_abs = mean_abs[k];
    b.std_abs = std::sqrt(acc[k].abs2 / n);
    b.rms = std::sqrt(sq[k] / n);
  }
  return out;
}

}  // namespace sidebench
