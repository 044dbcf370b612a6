#pragma once

#include "sidebench/core.hpp"

#include <filesystem>

namespace sidebench {

/// Loads a depth map; the format follows the extension (.png = 16-bit
/// grayscale scaled by max_depth, .pfm = float32 meters).
DepthMap load_depth(const std::filesystem::path& path, const MetricConfig& cfg);
DepthMap load_depth(const std::filesystem::path& path, double max_depth);

/// Writes .png (16-bit, raw = round(z / max_depth * 65535), invalid = 0) or
/// .pfm (float32, invalid = 0). PNG encoding throws for depths above max_depth.
void save_depth(const std::filesystem::path& path, const DepthMap& depth, double max_depth);

/// 8-bit grayscale PNG; any non-zero pixel is set.
Mask load_binary_png(const std::filesystem::path& path);
void save_binary_png(const std::filesystem::path& path, const Mask& bits);

SemanticMask load_mask(const std::filesystem::path& path, MaskLabel label, int instance_id = 0);
EdgeMap load_edges(const std::filesystem::path& path);

/// 8-bit RGB (or RGBA, alpha dropped) PNG mapped to [0,1].
RgbImage load_rgb(const std::filesystem::path& path);
void save_rgb(const std::filesystem::path& path, const RgbImage& img);

/// Raw grayscale access, used by tests and the augmentation tree writer.
Image<std::uint16_t> read_png_gray16(const std::filesystem::path& path);
void write_png_gray16(const std::filesystem::path& path, const Image<std::uint16_t>& raw);

}  // namespace sidebench
