#pragma once

#include "sidebench/geometry.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sidebench::synth {

/// Pixel region: intersection of half-planes a*u + b*v + c >= 0 over pixel
/// coordinates. No half-planes selects the whole image.
struct Region {
  std::vector<std::array<double, 3>> halfplanes;

  bool contains(Eigen::Index u, Eigen::Index v) const;

  static Region all() { return {}; }
  /// u in [u0, u1), v in [v0, v1).
  static Region rect(double u0, double v0, double u1, double v1);
};

struct Surface {
  Planed plane;
  Region region;
  MaskLabel label = MaskLabel::wall;
  int instance_id = 0;
  std::array<double, 3> color{0.5, 0.5, 0.5};
};

/// Surfaces are painted in order; each pixel belongs to the last surface
/// whose region contains it.
struct SceneSpec {
  std::string id = "scene";
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  CameraIntrinsics intrinsics;
  std::vector<Surface> surfaces;
};

struct RenderedScene {
  DepthMap depth;
  std::vector<SemanticMask> masks;  // one per surface, in spec order
  EdgeMap edges;
  RgbImage rgb;
  Image<int> owner;  // surface index per pixel
};

/// Depth step (meters) above which neighbouring surfaces form an edge.
inline constexpr double kEdgeStep = 1e-6;

/// Analytic render: z = -offset / (normal . ray) for the owning plane. An
/// edge pixel is one whose right or lower neighbour belongs to another
/// surface with a depth step above kEdgeStep.
RenderedScene render(const SceneSpec& spec);

enum class PerturbKind { uniform_scale, additive_offset, sinusoidal_ripple, side_flip_about };

struct Perturbation {
  PerturbKind kind = PerturbKind::uniform_scale;
  double value = 1.0;       // scale factor, offset (m), ripple amplitude (m), or reference depth (m)
  double wavelength = 0.0;  // ripple wavelength along u, pixels
  double fraction = 0.0;    // share of valid pixels reflected by side_flip_about
};

/// Deterministic analytic perturbation. side_flip_about reflects
/// round(fraction * valid count) seeded pixels about the reference depth.
DepthMap perturb(const DepthMap& depth, const Perturbation& p, std::uint64_t seed);

/// Pixel mask of the pixels side_flip_about would reflect.
Mask flip_selection(const DepthMap& depth, double fraction, std::uint64_t seed);

/// Room-like scene: back wall, floor, left wall and a table top, with
/// dimensions drawn from `seed`.
SceneSpec demo_room(std::string id, Eigen::Index width, Eigen::Index height, std::uint64_t seed);

/// Scene file (JSON) with shared camera and a list of scenes; each scene may
/// carry a perturbation list applied to produce its prediction.
struct SceneFile {
  Eigen::Index width = 0;
  Eigen::Index height = 0;
  CameraIntrinsics intrinsics;
  double max_depth = 50.0;
  std::uint64_t seed = 0;
  // Copy the ground-truth edges into pred/edges/ instead of leaving the
  // prediction's edges to the evaluator's fallback detector.
  bool copy_gt_edges_to_pred = false;
  struct Entry {
    SceneSpec spec;
    std::vector<Perturbation> perturbations;
  };
  std::vector<Entry> scenes;
};

SceneFile parse_scene_file(const nlohmann::json& j);
SceneFile load_scene_file(const std::filesystem::path& path);
nlohmann::json to_json(const SceneFile& file);

/// Writes the dataset layout (rgb/, depth/, edges/, masks/...) plus a
/// prediction tree pred/ (with pred/edges/) and a sidebench.cfg holding the
/// camera and max_depth.
void write_dataset(const SceneFile& file, const std::filesystem::path& out_dir);

}  // namespace sidebench::synth
