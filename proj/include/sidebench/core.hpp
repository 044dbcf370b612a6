#pragma once

#include <Eigen/Core>

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sidebench {

/// Raised for every recoverable failure: bad input files, dimension
/// mismatches, degenerate geometry and invalid parameters.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Row-major dense image; row index is v (image y), column index is u.
template <typename Scalar>
using Image = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using Mask = Image<bool>;

inline Eigen::Index popcount(const Mask& m) { return m.count(); }

/// Dense metric depth with an explicit invalid marker.
///
/// Values that are zero, negative or non-finite at construction become
/// invalid; internally they are stored as quiet NaN and exposed only through
/// valid()/valid_mask(), so metric code never compares against sentinels.
class DepthMap {
 public:
  DepthMap() = default;
  DepthMap(Eigen::Index width, Eigen::Index height);
  explicit DepthMap(Image<double> values);

  static constexpr double invalid_marker() { return std::numeric_limits<double>::quiet_NaN(); }

  Eigen::Index width() const { return values_.cols(); }
  Eigen::Index height() const { return values_.rows(); }
  Eigen::Index size() const { return values_.size(); }

  bool valid(Eigen::Index v, Eigen::Index u) const { return !std::isnan(values_(v, u)); }
  double operator()(Eigen::Index v, Eigen::Index u) const { return values_(v, u); }

  void set(Eigen::Index v, Eigen::Index u, double depth);
  void invalidate(Eigen::Index v, Eigen::Index u) { values_(v, u) = invalid_marker(); }

  /// Raw storage; invalid pixels hold NaN.
  const Image<double>& values() const { return values_; }
  Mask valid_mask() const;

 private:
  Image<double> values_;
};

/// Three-channel image with values in [0,1].
class RgbImage {
 public:
  RgbImage() = default;
  RgbImage(Eigen::Index width, Eigen::Index height);
  RgbImage(Image<double> r, Image<double> g, Image<double> b);

  Eigen::Index width() const { return channels_[0].cols(); }
  Eigen::Index height() const { return channels_[0].rows(); }

  const Image<double>& channel(int c) const { return channels_[c]; }
  Image<double>& channel(int c) { return channels_[c]; }

  /// Throws unless all channels share positive dimensions and lie in [0,1].
  void check() const;

  friend bool operator==(const RgbImage& a, const RgbImage& b);

 private:
  Image<double> channels_[3];
};

enum class MaskLabel { wall, floor, table, transparent, invalid };

std::string_view to_string(MaskLabel label);
std::optional<MaskLabel> parse_mask_label(std::string_view name);
inline bool is_plane_label(MaskLabel l) {
  return l == MaskLabel::wall || l == MaskLabel::floor || l == MaskLabel::table;
}

struct SemanticMask {
  MaskLabel label = MaskLabel::invalid;
  int instance_id = 0;
  Mask bits;
};

struct EdgeMap {
  Mask bits;

  Eigen::Index width() const { return bits.cols(); }
  Eigen::Index height() const { return bits.rows(); }
};

struct CameraIntrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;

  /// Throws if focal lengths are non-positive or the principal point lies
  /// outside a width x height image.
  void check(Eigen::Index width, Eigen::Index height) const;
};

enum class ScalingMode { none, median_ratio };

struct RansacConfig {
  int iterations = 500;
  double inlier_threshold = 0.01;  // meters
  std::uint64_t seed = 42;
};

struct MetricConfig {
  double delta_base = 1.25;
  double bin_width = 1.0;       // meters
  double dt_truncation = 10.0;  // pixels
  double dde_ref_depth = 3.0;   // meters
  double max_depth = 50.0;      // 16-bit PNG full scale, meters
  ScalingMode scaling_mode = ScalingMode::median_ratio;
  RansacConfig ransac;

  // Fallback gradient edge detector for predictions without edge maps.
  bool edge_fallback = true;
  double edge_high = 0.5;  // meters per pixel
  double edge_low = 0.2;

  bool exclude_transparent = true;

  // Non-positive focal lengths and negative principal point coordinates
  // mean "derive from image size".
  CameraIntrinsics intrinsics{0.0, 0.0, -1.0, -1.0};

  void check() const;
};

/// Intrinsics from the config, filling unset entries from the image size.
CameraIntrinsics resolve_intrinsics(const MetricConfig& cfg, Eigen::Index width, Eigen::Index height);

std::string_view to_string(ScalingMode mode);

/// Pixel is valid iff it is valid in both maps and not set in `invalid`.
Mask valid_pixels(const DepthMap& pred, const DepthMap& gt, const Mask* invalid = nullptr);

inline void require_same_size(Eigen::Index w1, Eigen::Index h1, Eigen::Index w2, Eigen::Index h2,
                              const char* what) {
  if (w1 != w2 || h1 != h2) {
    throw Error(std::string("dimension mismatch: ") + what + " (" + std::to_string(w1) + "x" +
                std::to_string(h1) + " vs " + std::to_string(w2) + "x" + std::to_string(h2) + ")");
  }
}

}  // namespace sidebench
