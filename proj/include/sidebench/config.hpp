#pragma once

#include "sidebench/core.hpp"

#include <filesystem>
#include <string>
#include <string_view>

namespace sidebench {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);

/// Applies `key=value` lines (blank lines and '#' comments ignored) on top
/// of `cfg`. Keys mirror MetricConfig: delta_base, bin_width, dt_truncation,
/// dde_ref_depth, max_depth, scaling_mode, ransac_iterations,
/// ransac_inlier_threshold, ransac_seed, edge_fallback, edge_high, edge_low,
/// exclude_transparent, fx, fy, cx, cy.
void apply_config_text(std::string_view text, MetricConfig& cfg);
void apply_config_file(const std::filesystem::path& path, MetricConfig& cfg);

/// Every key in canonical order; apply_config_text(to_config_text(c)) == c.
std::string to_config_text(const MetricConfig& cfg);

}  // namespace sidebench
