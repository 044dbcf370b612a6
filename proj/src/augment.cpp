#include "sidebench/augment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <random>

namespace sidebench {

void Augmentation::check() const {
  switch (kind) {
    case AugmentationKind::channel_swap: {
      auto sorted = order;
      std::sort(sorted.begin(), sorted.end());
      if (sorted != std::array<int, 3>{0, 1, 2}) throw Error("channel order must be a permutation of 0,1,2");
      break;
    }
    case AugmentationKind::hue_shift:
      if (!std::isfinite(value)) throw Error("hue shift must be finite");
      break;
    case AugmentationKind::saturation_scale:
      if (!(value >= 0.0) || !std::isfinite(value)) throw Error("saturation factor must be >= 0");
      break;
    case AugmentationKind::gamma:
      if (!(value > 0.0) || !std::isfinite(value)) throw Error("gamma must be positive");
      break;
    case AugmentationKind::gaussian_blur:
      if (!(value > 0.0) || !std::isfinite(value)) throw Error("blur sigma must be positive");
      break;
    case AugmentationKind::gaussian_noise:
      if (!(value >= 0.0) || !std::isfinite(value)) throw Error("noise variance must be >= 0");
      break;
    case AugmentationKind::salt_pepper:
      if (!(value >= 0.0 && value <= 1.0)) throw Error("salt and pepper fraction must lie in [0,1]");
      break;
    default:
      break;
  }
}

std::array<double, 3> rgb_to_hsv(double r, double g, double b) {
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double c = mx - mn;
  double h = 0.0;
  if (c > 0.0) {
    if (mx == r) {
      h = 60.0 * std::fmod((g - b) / c, 6.0);
    } else if (mx == g) {
      h = 60.0 * ((b - r) / c + 2.0);
    } else {
      h = 60.0 * ((r - g) / c + 4.0);
    }
    if (h < 0.0) h += 360.0;
  }
  const double s = mx > 0.0 ? c / mx : 0.0;
  return {h, s, mx};
}

std::array<double, 3> hsv_to_rgb(double h, double s, double v) {
  h = std::fmod(h, 360.0);
  if (h < 0.0) h += 360.0;
  const double c = v * s;
  const double hp = h / 60.0;
  const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  switch (static_cast<int>(hp) % 6) {
    case 0: r = c; g = x; break;
    case 1: r = x; g = c; break;
    case 2: g = c; b = x; break;
    case 3: g = x; b = c; break;
    case 4: r = x; b = c; break;
    default: r = c; b = x; break;
  }
  const double m = v - c;
  return {std::clamp(r + m, 0.0, 1.0), std::clamp(g + m, 0.0, 1.0), std::clamp(b + m, 0.0, 1.0)};
}

namespace {

template <typename F>
RgbImage map_hsv(const RgbImage& img, F&& f) {
  RgbImage out = img;
  for (Eigen::Index v = 0; v < img.height(); ++v) {
    for (Eigen::Index u = 0; u < img.width(); ++u) {
      auto hsv = rgb_to_hsv(img.channel(0)(v, u), img.channel(1)(v, u), img.channel(2)(v, u));
      f(hsv);
      const auto rgb = hsv_to_rgb(hsv[0], hsv[1], hsv[2]);
      for (int c = 0; c < 3; ++c) out.channel(c)(v, u) = rgb[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

double percentile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, values.size() - 1);
  return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

RgbImage histogram_stretch(const RgbImage& img) {
  const Image<double> luma = 0.299 * img.channel(0) + 0.587 * img.channel(1) + 0.114 * img.channel(2);
  std::vector<double> values(luma.data(), luma.data() + luma.size());
  const double lo = percentile(values, 0.01);
  const double hi = percentile(values, 0.99);
  if (!(hi > lo)) return img;
  RgbImage out = img;
  for (int c = 0; c < 3; ++c) out.channel(c) = ((img.channel(c) - lo) / (hi - lo)).min(1.0).max(0.0);
  return out;
}

std::vector<double> gaussian_kernel(double sigma) {
  const int radius = static_cast<int>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  for (int i = -radius; i <= radius; ++i) {
    k[static_cast<std::size_t>(i + radius)] = std::exp(-0.5 * (i * i) / (sigma * sigma));
  }
  const double sum = std::accumulate(k.begin(), k.end(), 0.0);
  for (auto& w : k) w /= sum;
  return k;
}

// Separable convolution, rows then columns, clamp-to-edge.
Image<double> blur_channel(const Image<double>& src, const std::vector<double>& k) {
  const Eigen::Index rows = src.rows();
  const Eigen::Index cols = src.cols();
  const auto radius = static_cast<Eigen::Index>(k.size() / 2);
  Image<double> tmp(rows, cols);
  for (Eigen::Index v = 0; v < rows; ++v) {
    for (Eigen::Index u = 0; u < cols; ++u) {
      double acc = 0.0;
      for (Eigen::Index i = -radius; i <= radius; ++i) {
        acc += k[static_cast<std::size_t>(i + radius)] * src(v, std::clamp<Eigen::Index>(u + i, 0, cols - 1));
      }
      tmp(v, u) = acc;
    }
  }
  Image<double> out(rows, cols);
  for (Eigen::Index v = 0; v < rows; ++v) {
    for (Eigen::Index u = 0; u < cols; ++u) {
      double acc = 0.0;
      for (Eigen::Index i = -radius; i <= radius; ++i) {
        acc += k[static_cast<std::size_t>(i + radius)] * tmp(std::clamp<Eigen::Index>(v + i, 0, rows - 1), u);
      }
      out(v, u) = std::clamp(acc, 0.0, 1.0);
    }
  }
  return out;
}

template <typename Array>
Array flipped(const Array& a, AugmentationKind kind) {
  if (kind == AugmentationKind::flip_h) return a.rowwise().reverse();
  return a.colwise().reverse();
}

}  // namespace

RgbImage apply(const RgbImage& img, const Augmentation& aug) {
  img.check();
  aug.check();
  RgbImage out = img;
  switch (aug.kind) {
    case AugmentationKind::flip_h:
    case AugmentationKind::flip_v:
      for (int c = 0; c < 3; ++c) out.channel(c) = flipped(img.channel(c), aug.kind);
      return out;
    case AugmentationKind::channel_swap:
      for (int c = 0; c < 3; ++c) out.channel(c) = img.channel(aug.order[static_cast<std::size_t>(c)]);
      return out;
    case AugmentationKind::hue_shift:
      return map_hsv(img, [&](auto& hsv) { hsv[0] += aug.value; });
    case AugmentationKind::saturation_scale:
      return map_hsv(img, [&](auto& hsv) { hsv[1] = std::clamp(hsv[1] * aug.value, 0.0, 1.0); });
    case AugmentationKind::gamma:
      for (int c = 0; c < 3; ++c) out.channel(c) = img.channel(c).pow(aug.value);
      return out;
    case AugmentationKind::histogram_stretch:
      return histogram_stretch(img);
    case AugmentationKind::gaussian_blur: {
      const auto k = gaussian_kernel(aug.value);
      for (int c = 0; c < 3; ++c) out.channel(c) = blur_channel(img.channel(c), k);
      return out;
    }
    case AugmentationKind::gaussian_noise: {
      std::mt19937_64 rng(aug.seed);
      std::normal_distribution<double> noise(0.0, std::sqrt(aug.value));
      for (Eigen::Index v = 0; v < img.height(); ++v) {
        for (Eigen::Index u = 0; u < img.width(); ++u) {
          for (int c = 0; c < 3; ++c) {
            out.channel(c)(v, u) = std::clamp(img.channel(c)(v, u) + noise(rng), 0.0, 1.0);
          }
        }
      }
      return out;
    }
    case AugmentationKind::salt_pepper: {
      const Eigen::Index n = img.width() * img.height();
      const auto affected = static_cast<Eigen::Index>(std::llround(aug.value * static_cast<double>(n)));
      std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
      std::iota(idx.begin(), idx.end(), 0);
      std::mt19937_64 rng(aug.seed);
      // Partial Fisher-Yates: the first `affected` slots are a uniform sample.
      for (Eigen::Index i = 0; i < affected; ++i) {
        std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
      }
      for (Eigen::Index i = 0; i < affected; ++i) {
        const double value = i < affected / 2 ? 0.0 : 1.0;
        for (int c = 0; c < 3; ++c) out.channel(c).data()[idx[static_cast<std::size_t>(i)]] = value;
      }
      return out;
    }
  }
  return out;
}

DepthMap paired_gt_transform(const DepthMap& gt, const Augmentation& aug) {
  if (!aug.is_geometric()) return gt;
  return DepthMap(flipped(gt.values(), aug.kind));
}

Mask paired_gt_transform(const Mask& bits, const Augmentation& aug) {
  if (!aug.is_geometric()) return bits;
  return flipped(bits, aug.kind);
}

std::vector<Preset> table_presets() {
  auto single = [](std::string name, std::string label, Augmentation aug) {
    return Preset{name, std::move(label), {PresetStep{std::move(name), aug}}};
  };
  return {
      single("LR", "LR", Augmentation::flip_h()),
      single("UD", "UD", Augmentation::flip_v()),
      single("gamma0.2", "γ=0.2", Augmentation::gamma(0.2)),
      single("gamma2", "γ=2", Augmentation::gamma(2.0)),
      single("Norm", "Norm.", Augmentation::histogram_stretch()),
      single("GBR", "GBR", Augmentation::channel_swap({1, 2, 0})),
      single("BRG", "BRG", Augmentation::channel_swap({2, 0, 1})),
      single("hue+9", "+9°", Augmentation::hue_shift(9.0)),
      single("hue+90", "+90°", Augmentation::hue_shift(90.0)),
      single("sat0.9", "×0.9", Augmentation::saturation_scale(0.9)),
      single("sat0", "×0", Augmentation::saturation_scale(0.0)),
  };
}

std::vector<Preset> sweep_presets(std::uint64_t seed) {
  Preset gb{"GB", "Gaussian blur", {}};
  for (auto [tag, sigma] : {std::pair{"0.1", 0.1}, {"1.0", 1.0}, {"1.7783", 1.7783},
                            {"3.1623", 3.1623}, {"5.6234", 5.6234}, {"10.0", 10.0}}) {
    gb.steps.push_back({std::string("GB_") + tag, Augmentation::gaussian_blur(sigma)});
  }
  Preset gn{"GN", "Gaussian noise", {}};
  for (auto [tag, var] : {std::pair{"1e-05", 1e-5}, {"0.001", 1e-3}, {"0.01", 1e-2}, {"0.1", 1e-1},
                          {"0.31623", 0.31623}, {"1", 1.0}}) {
    gn.steps.push_back({std::string("GN_") + tag, Augmentation::gaussian_noise(var, seed)});
  }
  Preset sp{"SP", "Salt and pepper", {}};
  for (auto [tag, frac] : {std::pair{"0", 0.0}, {"0.005", 0.005}, {"0.016", 0.016}, {"0.05", 0.05},
                           {"0.16", 0.16}, {"0.5", 0.5}}) {
    sp.steps.push_back({std::string("SP_") + tag, Augmentation::salt_pepper(frac, seed)});
  }
  return {gb, gn, sp};
}

Preset find_preset(const std::string& name, std::uint64_t seed) {
  auto lower = [](std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
  };
  const std::string key = lower(name);
  auto presets = table_presets();
  for (auto& p : sweep_presets(seed)) presets.push_back(std::move(p));
  for (auto& p : presets) {
    if (lower(p.name) == key || p.label == name) return p;
  }
  // "Sat×0" / "Sat×0.9" style spellings.
  for (const std::string prefix : {"sat×", "sat*", "satx"}) {
    if (key.rfind(prefix, 0) == 0) return find_preset("sat" + key.substr(prefix.size()), seed);
  }
  throw Error("unknown augmentation preset: " + name);
}

}  // namespace sidebench
