#pragma once

#include "sidebench/core.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace sidebench {

enum class AugmentationKind {
  flip_h,
  flip_v,
  channel_swap,
  hue_shift,
  saturation_scale,
  gamma,
  histogram_stretch,
  gaussian_blur,
  gaussian_noise,
  salt_pepper,
};

struct Augmentation {
  AugmentationKind kind = AugmentationKind::flip_h;
  // Meaning depends on kind: degrees (hue), factor (saturation), exponent
  // (gamma), sigma in px (blur), variance on the [0,1] scale (noise),
  // affected fraction (salt and pepper).
  double value = 0.0;
  // Output channel c takes input channel order[c] (channel_swap only).
  std::array<int, 3> order{0, 1, 2};
  std::uint64_t seed = 0;

  static Augmentation flip_h() { return {AugmentationKind::flip_h}; }
  static Augmentation flip_v() { return {AugmentationKind::flip_v}; }
  static Augmentation channel_swap(std::array<int, 3> order) {
    return {AugmentationKind::channel_swap, 0.0, order};
  }
  static Augmentation hue_shift(double degrees) { return {AugmentationKind::hue_shift, degrees}; }
  static Augmentation saturation_scale(double f) { return {AugmentationKind::saturation_scale, f}; }
  static Augmentation gamma(double g) { return {AugmentationKind::gamma, g}; }
  static Augmentation histogram_stretch() { return {AugmentationKind::histogram_stretch}; }
  static Augmentation gaussian_blur(double sigma) { return {AugmentationKind::gaussian_blur, sigma}; }
  static Augmentation gaussian_noise(double variance, std::uint64_t seed) {
    return {AugmentationKind::gaussian_noise, variance, {0, 1, 2}, seed};
  }
  static Augmentation salt_pepper(double fraction, std::uint64_t seed) {
    return {AugmentationKind::salt_pepper, fraction, {0, 1, 2}, seed};
  }

  bool is_geometric() const { return kind == AugmentationKind::flip_h || kind == AugmentationKind::flip_v; }
  bool is_stochastic() const {
    return kind == AugmentationKind::gaussian_noise || kind == AugmentationKind::salt_pepper;
  }
  void check() const;
};

RgbImage apply(const RgbImage& img, const Augmentation& aug);

/// Mirrors the ground truth for flips; photometric kinds return it unchanged.
DepthMap paired_gt_transform(const DepthMap& gt, const Augmentation& aug);
Mask paired_gt_transform(const Mask& bits, const Augmentation& aug);

/// HSV with hue in degrees [0,360) and s, v in [0,1].
std::array<double, 3> rgb_to_hsv(double r, double g, double b);
std::array<double, 3> hsv_to_rgb(double h, double s, double v);

struct PresetStep {
  std::string tag;  // output directory name
  Augmentation aug;
};

struct Preset {
  std::string name;   // CLI name
  std::string label;  // column label of the robustness table
  std::vector<PresetStep> steps;
};

/// The eleven single-step presets: LR, UD, gamma 0.2 and 2, Norm., GBR, BRG,
/// hue +9 and +90 degrees, saturation x0.9 and x0.
std::vector<Preset> table_presets();

/// Intensity sweeps: GB (blur sigma), GN (noise variance), SP (salt and pepper).
std::vector<Preset> sweep_presets(std::uint64_t seed);

/// Looks a preset up by CLI name or table label; throws for unknown names.
Preset find_preset(const std::string& name, std::uint64_t seed);

}  // namespace sidebench
