#include "sidebench/synth.hpp"

#include "sidebench/config.hpp"
#include "sidebench/io.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <random>

namespace sidebench::synth {

bool Region::contains(Eigen::Index u, Eigen::Index v) const {
  const double fu = static_cast<double>(u);
  const double fv = static_cast<double>(v);
  for (const auto& h : halfplanes) {
    if (!(h[0] * fu + h[1] * fv + h[2] >= 0.0)) return false;
  }
  return true;
}

Region Region::rect(double u0, double v0, double u1, double v1) {
  // Integer pixel coordinates: u < u1 is u <= ceil(u1) - 1.
  return Region{{{1.0, 0.0, -u0},
                 {-1.0, 0.0, std::ceil(u1) - 1.0},
                 {0.0, 1.0, -v0},
                 {0.0, -1.0, std::ceil(v1) - 1.0}}};
}

RenderedScene render(const SceneSpec& spec) {
  if (spec.width <= 0 || spec.height <= 0) throw Error("scene needs positive dimensions");
  if (spec.surfaces.empty()) throw Error("scene has no surfaces");
  spec.intrinsics.check(spec.width, spec.height);

  RenderedScene out;
  out.owner = Image<int>::Constant(spec.height, spec.width, -1);
  for (std::size_t s = 0; s < spec.surfaces.size(); ++s) {
    for (Eigen::Index v = 0; v < spec.height; ++v) {
      for (Eigen::Index u = 0; u < spec.width; ++u) {
        if (spec.surfaces[s].region.contains(u, v)) out.owner(v, u) = static_cast<int>(s);
      }
    }
  }

  Image<double> z(spec.height, spec.width);
  for (Eigen::Index v = 0; v < spec.height; ++v) {
    for (Eigen::Index u = 0; u < spec.width; ++u) {
      const int s = out.owner(v, u);
      if (s < 0) throw Error("scene " + spec.id + ": pixel not covered by any surface");
      const auto& plane = spec.surfaces[static_cast<std::size_t>(s)].plane;
      const Vec3d ray = pixel_ray(spec.intrinsics, static_cast<double>(u), static_cast<double>(v));
      const double denom = plane.normal.dot(ray);
      if (denom == 0.0) throw Error("scene " + spec.id + ": ray parallel to its plane");
      const double depth = -plane.offset / denom;
      if (!(depth > 0.0) || !std::isfinite(depth)) {
        throw Error("scene " + spec.id + ": surface behind the camera");
      }
      z(v, u) = depth;
    }
  }
  out.depth = DepthMap(z);

  out.edges.bits = Mask::Constant(spec.height, spec.width, false);
  for (Eigen::Index v = 0; v < spec.height; ++v) {
    for (Eigen::Index u = 0; u < spec.width; ++u) {
      const auto step_to = [&](Eigen::Index nv, Eigen::Index nu) {
        return out.owner(nv, nu) != out.owner(v, u) && std::abs(z(nv, nu) - z(v, u)) > kEdgeStep;
      };
      if ((u + 1 < spec.width && step_to(v, u + 1)) || (v + 1 < spec.height && step_to(v + 1, u))) {
        out.edges.bits(v, u) = true;
      }
    }
  }

  out.masks.reserve(spec.surfaces.size());
  for (std::size_t s = 0; s < spec.surfaces.size(); ++s) {
    const auto& surf = spec.surfaces[s];
    out.masks.push_back({surf.label, surf.instance_id, out.owner == static_cast<int>(s)});
  }

  out.rgb = RgbImage(spec.width, spec.height);
  for (Eigen::Index v = 0; v < spec.height; ++v) {
    for (Eigen::Index u = 0; u < spec.width; ++u) {
      const auto& color = spec.surfaces[static_cast<std::size_t>(out.owner(v, u))].color;
      for (int c = 0; c < 3; ++c) out.rgb.channel(c)(v, u) = color[static_cast<std::size_t>(c)];
    }
  }
  return out;
}

Mask flip_selection(const DepthMap& depth, double fraction, std::uint64_t seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) throw Error("flip fraction must lie in [0,1]");
  std::vector<Eigen::Index> idx;
  for (Eigen::Index i = 0; i < depth.size(); ++i) {
    if (!std::isnan(depth.values().data()[i])) idx.push_back(i);
  }
  const auto n = static_cast<Eigen::Index>(idx.size());
  const auto count = static_cast<Eigen::Index>(std::llround(fraction * static_cast<double>(n)));
  std::mt19937_64 rng(seed);
  for (Eigen::Index i = 0; i < count; ++i) {
    std::uniform_int_distribution<Eigen::Index> pick(i, n - 1);
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(rng))]);
  }
  Mask sel = Mask::Constant(depth.height(), depth.width(), false);
  for (Eigen::Index i = 0; i < count; ++i) sel.data()[idx[static_cast<std::size_t>(i)]] = true;
  return sel;
}

DepthMap perturb(const DepthMap& depth, const Perturbation& p, std::uint64_t seed) {
  Image<double> z = depth.values();
  switch (p.kind) {
    case PerturbKind::uniform_scale:
      if (!(p.value > 0.0)) throw Error("scale factor must be positive");
      z *= p.value;
      break;
    case PerturbKind::additive_offset:
      z += p.value;
      break;
    case PerturbKind::sinusoidal_ripple: {
      if (!(p.wavelength > 0.0)) throw Error("ripple wavelength must be positive");
      for (Eigen::Index u = 0; u < z.cols(); ++u) {
        z.col(u) += p.value * std::sin(2.0 * EIGEN_PI * static_cast<double>(u) / p.wavelength);
      }
      break;
    }
    case PerturbKind::side_flip_about: {
      if (!(p.value > 0.0)) throw Error("reference depth must be positive");
      const Mask sel = flip_selection(depth, p.fraction, seed);
      z = sel.select(2.0 * p.value - z, z);
      break;
    }
  }
  // NaN entries stay invalid; anything pushed to <= 0 is a parameter error.
  if (((z <= 0.0) && depth.valid_mask()).any()) throw Error("perturbation produced non-positive depth");
  return DepthMap(std::move(z));
}

namespace {

Region convex_polygon(const std::vector<std::array<double, 2>>& pts) {
  double area = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    area += p[0] * q[1] - q[0] * p[1];
  }
  const double sign = area >= 0.0 ? 1.0 : -1.0;
  Region r;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& p = pts[i];
    const auto& q = pts[(i + 1) % pts.size()];
    const double dx = q[0] - p[0];
    const double dy = q[1] - p[1];
    r.halfplanes.push_back({-dy * sign, dx * sign, (dy * p[0] - dx * p[1]) * sign});
  }
  return r;
}

}  // namespace

SceneSpec demo_room(std::string id, Eigen::Index width, Eigen::Index height, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto uni = [&](double a, double b) { return std::uniform_real_distribution<double>(a, b)(rng); };

  SceneSpec spec;
  spec.id = std::move(id);
  spec.width = width;
  spec.height = height;
  const double f = 525.0 * static_cast<double>(width) / 640.0;
  spec.intrinsics = {f, f, 0.5 * static_cast<double>(width - 1), 0.5 * static_cast<double>(height - 1)};
  const auto& k = spec.intrinsics;

  const double cam_height = uni(1.2, 1.6);
  const double back = uni(4.0, 8.0);
  const double side = uni(1.5, 3.0);
  const double table_top = cam_height - 0.75;

  // Back wall z = back covers everything not painted later.
  spec.surfaces.push_back({Planed::from_coefficients({0, 0, -1}, back), Region::all(), MaskLabel::wall, 0,
                           {0.80, 0.78, 0.70}});
  // Floor y = cam_height below the horizon line where it meets the back wall.
  const double v_horizon = k.cy + k.fy * cam_height / back;
  spec.surfaces.push_back({Planed::from_coefficients({0, -1, 0}, cam_height), Region{{{0.0, 1.0, -v_horizon}}},
                           MaskLabel::floor, 0, {0.45, 0.35, 0.25}});
  // Left wall x = -side: in front of the back wall and above the floor crease.
  const double u_back = k.cx - k.fx * side / back;
  spec.surfaces.push_back({Planed::from_coefficients({1, 0, 0}, side),
                           Region{{{-1.0, 0.0, u_back}, {-cam_height, -side, side * k.cy + cam_height * k.cx}}},
                           MaskLabel::wall, 1, {0.65, 0.70, 0.80}});
  // Table top y = table_top, an axis-aligned rectangle in front of the walls.
  const double z0 = uni(2.0, 0.5 * (2.0 + back));
  const double z1 = z0 + uni(0.6, 1.2);
  const double x0 = uni(-side + 0.3, 0.0);
  const double x1 = x0 + uni(0.6, 1.5);
  std::vector<std::array<double, 2>> quad;
  for (auto [x, z] : {std::pair{x0, z0}, {x1, z0}, {x1, z1}, {x0, z1}}) {
    quad.push_back({k.cx + k.fx * x / z, k.cy + k.fy * table_top / z});
  }
  spec.surfaces.push_back({Planed::from_coefficients({0, -1, 0}, table_top), convex_polygon(quad),
                           MaskLabel::table, 0, {0.30, 0.55, 0.35}});
  return spec;
}

namespace {

using nlohmann::json;

PerturbKind parse_perturb_kind(const std::string& s) {
  if (s == "uniform_scale") return PerturbKind::uniform_scale;
  if (s == "additive_offset") return PerturbKind::additive_offset;
  if (s == "sinusoidal_ripple") return PerturbKind::sinusoidal_ripple;
  if (s == "side_flip_about") return PerturbKind::side_flip_about;
  throw Error("unknown perturbation kind: " + s);
}

const char* perturb_kind_name(PerturbKind k) {
  switch (k) {
    case PerturbKind::uniform_scale: return "uniform_scale";
    case PerturbKind::additive_offset: return "additive_offset";
    case PerturbKind::sinusoidal_ripple: return "sinusoidal_ripple";
    case PerturbKind::side_flip_about: return "side_flip_about";
  }
  return "uniform_scale";
}

std::vector<Perturbation> parse_perturbations(const json& j) {
  std::vector<Perturbation> out;
  for (const auto& p : j) {
    Perturbation q;
    q.kind = parse_perturb_kind(p.at("kind").get<std::string>());
    q.value = p.value("value", q.kind == PerturbKind::uniform_scale ? 1.0 : 0.0);
    q.wavelength = p.value("wavelength", 0.0);
    q.fraction = p.value("fraction", 0.0);
    out.push_back(q);
  }
  return out;
}

}  // namespace

SceneFile parse_scene_file(const json& j) {
  SceneFile file;
  try {
    file.width = j.at("width").get<Eigen::Index>();
    file.height = j.at("height").get<Eigen::Index>();
    file.max_depth = j.value("max_depth", 50.0);
    file.seed = j.value("seed", std::uint64_t{0});
    file.copy_gt_edges_to_pred = j.value("pred_edges", std::string("detect")) == "gt";
    const double f = 525.0 * static_cast<double>(file.width) / 640.0;
    file.intrinsics = {f, f, 0.5 * static_cast<double>(file.width - 1), 0.5 * static_cast<double>(file.height - 1)};
    if (j.contains("intrinsics")) {
      const auto& k = j.at("intrinsics");
      file.intrinsics = {k.at("fx").get<double>(), k.at("fy").get<double>(), k.at("cx").get<double>(),
                         k.at("cy").get<double>()};
    }
    if (j.contains("demo")) {
      const auto& d = j.at("demo");
      const int count = d.at("count").get<int>();
      const auto demo_seed = d.value("seed", std::uint64_t{1});
      const auto perts = parse_perturbations(d.value("perturb", json::array()));
      for (int i = 0; i < count; ++i) {
        char id[32];
        std::snprintf(id, sizeof(id), "room%03d", i);
        auto spec = demo_room(id, file.width, file.height, demo_seed + static_cast<std::uint64_t>(i));
        spec.intrinsics = file.intrinsics;
        file.scenes.push_back({std::move(spec), perts});
      }
    }
    for (const auto& s : j.value("scenes", json::array())) {
      SceneSpec spec;
      spec.id = s.at("id").get<std::string>();
      spec.width = file.width;
      spec.height = file.height;
      spec.intrinsics = file.intrinsics;
      if (s.contains("demo_room_seed")) {
        spec = demo_room(spec.id, file.width, file.height, s.at("demo_room_seed").get<std::uint64_t>());
        spec.intrinsics = file.intrinsics;
      }
      for (const auto& js : s.value("surfaces", json::array())) {
        Surface surf;
        const auto n = js.at("normal").get<std::array<double, 3>>();
        surf.plane = Planed::from_coefficients({n[0], n[1], n[2]}, js.at("offset").get<double>());
        for (const auto& h : js.value("region", json::array())) {
          surf.region.halfplanes.push_back(h.get<std::array<double, 3>>());
        }
        const auto label = parse_mask_label(js.value("label", std::string("wall")));
        if (!label) throw Error("unknown surface label");
        surf.label = *label;
        surf.instance_id = js.value("instance", 0);
        if (js.contains("color")) surf.color = js.at("color").get<std::array<double, 3>>();
        spec.surfaces.push_back(std::move(surf));
      }
      file.scenes.push_back({std::move(spec), parse_perturbations(s.value("perturb", json::array()))});
    }
  } catch (const json::exception& e) {
    throw Error(std::string("scene file: ") + e.what());
  }
  if (file.scenes.empty()) throw Error("scene file defines no scenes");
  return file;
}

SceneFile load_scene_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open scene file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("scene file " + path.string() + ": " + e.what());
  }
  return parse_scene_file(j);
}

json to_json(const SceneFile& file) {
  json j;
  j["width"] = file.width;
  j["height"] = file.height;
  j["max_depth"] = file.max_depth;
  j["seed"] = file.seed;
  j["pred_edges"] = file.copy_gt_edges_to_pred ? "gt" : "detect";
  j["intrinsics"] = {{"fx", file.intrinsics.fx}, {"fy", file.intrinsics.fy},
                     {"cx", file.intrinsics.cx}, {"cy", file.intrinsics.cy}};
  json scenes = json::array();
  for (const auto& e : file.scenes) {
    json s;
    s["id"] = e.spec.id;
    json surfaces = json::array();
    for (const auto& surf : e.spec.surfaces) {
      json js;
      js["normal"] = {surf.plane.normal.x(), surf.plane.normal.y(), surf.plane.normal.z()};
      js["offset"] = surf.plane.offset;
      js["region"] = surf.region.halfplanes;
      js["label"] = std::string(to_string(surf.label));
      js["instance"] = surf.instance_id;
      js["color"] = surf.color;
      surfaces.push_back(std::move(js));
    }
    s["surfaces"] = std::move(surfaces);
    json perts = json::array();
    for (const auto& p : e.perturbations) {
      perts.push_back({{"kind", perturb_kind_name(p.kind)},
                       {"value", p.value},
                       {"wavelength", p.wavelength},
                       {"fraction", p.fraction}});
    }
    s["perturb"] = std::move(perts);
    scenes.push_back(std::move(s));
  }
  j["scenes"] = std::move(scenes);
  return j;
}

void write_dataset(const SceneFile& file, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  for (const char* sub : {"rgb", "depth", "edges", "pred", "pred/edges", "masks/invalid", "masks/transparent",
                          "masks/wall", "masks/floor", "masks/table"}) {
    fs::create_directories(out_dir / sub);
  }
  for (std::size_t i = 0; i < file.scenes.size(); ++i) {
    const auto& entry = file.scenes[i];
    const auto& id = entry.spec.id;
    const auto scene = render(entry.spec);
    save_rgb(out_dir / "rgb" / (id + ".png"), scene.rgb);
    save_depth(out_dir / "depth" / (id + ".png"), scene.depth, file.max_depth);
    save_binary_png(out_dir / "edges" / (id + ".png"), scene.edges.bits);
    for (const auto& m : scene.masks) {
      if (!is_plane_label(m.label) || !m.bits.any()) continue;
      save_binary_png(out_dir / "masks" / std::string(to_string(m.label)) /
                          (id + "_" + std::to_string(m.instance_id) + ".png"),
                      m.bits);
    }
    DepthMap pred = scene.depth;
    for (std::size_t k = 0; k < entry.perturbations.size(); ++k) {
      pred = perturb(pred, entry.perturbations[k], file.seed + i * 1000 + k);
    }
    save_depth(out_dir / "pred" / (id + ".png"), pred, file.max_depth);
    if (file.copy_gt_edges_to_pred) save_binary_png(out_dir / "pred" / "edges" / (id + ".png"), scene.edges.bits);
  }
  std::ofstream cfg(out_dir / "sidebench.cfg");
  cfg << "# camera and depth encoding of this dataset\n"
      << "fx=" << format_double(file.intrinsics.fx) << '\n'
      << "fy=" << format_double(file.intrinsics.fy) << '\n'
      << "cx=" << format_double(file.intrinsics.cx) << '\n'
      << "cy=" << format_double(file.intrinsics.cy) << '\n'
      << "max_depth=" << format_double(file.max_depth) << '\n';
  if (!cfg) throw Error("cannot write sidebench.cfg");
}

}  // namespace sidebench::synth
