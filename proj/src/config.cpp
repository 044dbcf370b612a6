#include "sidebench/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace sidebench {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw Error("config: bad number for " + std::string(key) + ": " + std::string(v));
  }
  return out;
}

long long parse_int(std::string_view key, std::string_view v) {
  long long out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc() || res.ptr != v.data() + v.size()) {
    throw Error("config: bad integer for " + std::string(key) + ": " + std::string(v));
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw Error("config: bad boolean for " + std::string(key) + ": " + std::string(v));
}

}  // namespace

void apply_config_text(std::string_view text, MetricConfig& cfg) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error("config line " + std::to_string(line_no) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    const auto val = trim(line.substr(eq + 1));
    if (key == "delta_base") cfg.delta_base = parse_double(key, val);
    else if (key == "bin_width") cfg.bin_width = parse_double(key, val);
    else if (key == "dt_truncation") cfg.dt_truncation = parse_double(key, val);
    else if (key == "dde_ref_depth") cfg.dde_ref_depth = parse_double(key, val);
    else if (key == "max_depth") cfg.max_depth = parse_double(key, val);
    else if (key == "scaling_mode") {
      if (val == "none") cfg.scaling_mode = ScalingMode::none;
      else if (val == "median_ratio" || val == "median") cfg.scaling_mode = ScalingMode::median_ratio;
      else throw Error("config: unknown scaling_mode " + std::string(val));
    }
    else if (key == "ransac_iterations") cfg.ransac.iterations = static_cast<int>(parse_int(key, val));
    else if (key == "ransac_inlier_threshold") cfg.ransac.inlier_threshold = parse_double(key, val);
    else if (key == "ransac_seed") cfg.ransac.seed = static_cast<std::uint64_t>(parse_int(key, val));
    else if (key == "edge_fallback") cfg.edge_fallback = parse_bool(key, val);
    else if (key == "edge_high") cfg.edge_high = parse_double(key, val);
    else if (key == "edge_low") cfg.edge_low = parse_double(key, val);
    else if (key == "exclude_transparent") cfg.exclude_transparent = parse_bool(key, val);
    else if (key == "fx") cfg.intrinsics.fx = parse_double(key, val);
    else if (key == "fy") cfg.intrinsics.fy = parse_double(key, val);
    else if (key == "cx") cfg.intrinsics.cx = parse_double(key, val);
    else if (key == "cy") cfg.intrinsics.cy = parse_double(key, val);
    else throw Error("config: unknown key " + std::string(key));
  }
  cfg.check();
}

void apply_config_file(const std::filesystem::path& path, MetricConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open config " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  apply_config_text(ss.str(), cfg);
}

std::string to_config_text(const MetricConfig& cfg) {
  std::ostringstream o;
  o << "delta_base=" << format_double(cfg.delta_base) << '\n'
    << "bin_width=" << format_double(cfg.bin_width) << '\n'
    << "dt_truncation=" << format_double(cfg.dt_truncation) << '\n'
    << "dde_ref_depth=" << format_double(cfg.dde_ref_depth) << '\n'
    << "max_depth=" << format_double(cfg.max_depth) << '\n'
    << "scaling_mode=" << to_string(cfg.scaling_mode) << '\n'
    << "ransac_iterations=" << cfg.ransac.iterations << '\n'
    << "ransac_inlier_threshold=" << format_double(cfg.ransac.inlier_threshold) << '\n'
    << "ransac_seed=" << cfg.ransac.seed << '\n'
    << "edge_fallback=" << (cfg.edge_fallback ? "true" : "false") << '\n'
    << "edge_high=" << format_double(cfg.edge_high) << '\n'
    << "edge_low=" << format_double(cfg.edge_low) << '\n'
    << "exclude_transparent=" << (cfg.exclude_transparent ? "true" : "false") << '\n'
    << "fx=" << format_double(cfg.intrinsics.fx) << '\n'
    << "fy=" << format_double(cfg.intrinsics.fy) << '\n'
    << "cx=" << format_double(cfg.intrinsics.cx) << '\n'
    << "cy=" << format_double(cfg.intrinsics.cy) << '\n';
  return o.str();
}

}  // namespace sidebench
