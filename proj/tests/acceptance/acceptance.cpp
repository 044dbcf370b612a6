// Acceptance checks 1-11. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. argv[1] is the sidebench CLI binary.

#include "oracles.hpp"
#include "sidebench/augment.hpp"
#include "sidebench/boundary.hpp"
#include "sidebench/dde.hpp"
#include "sidebench/metrics_standard.hpp"
#include "sidebench/planarity.hpp"
#include "sidebench/report.hpp"
#include "sidebench/synth.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace sidebench;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

/// Collects the first few failure messages.
struct Checker {
  Outcome out;
  int failures = 0;
  void expect(bool ok, const std::string& what) {
    if (ok) return;
    out.pass = false;
    if (failures++ < 3) out.detail += (out.detail.empty() ? "" : "; ") + what;
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
  std::ostringstream s;
  s.precision(3);
  s << x;
  return s.str();
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Rotation taking +z to a direction exactly `deg` away from it.
Eigen::Matrix3d tilt(double deg, double azimuth) {
  const Eigen::Vector3d axis(std::cos(azimuth), std::sin(azimuth), 0.0);
  return Eigen::AngleAxisd(deg * M_PI / 180.0, axis).toRotationMatrix();
}

synth::SceneSpec plane_scene(const Planed& plane, Eigen::Index w, Eigen::Index h, double f) {
  synth::SceneSpec s;
  s.width = w;
  s.height = h;
  s.intrinsics = {f, f, 0.5 * static_cast<double>(w - 1), 0.5 * static_cast<double>(h - 1)};
  s.surfaces.push_back({plane, synth::Region::all(), MaskLabel::wall, 0, {0.5, 0.5, 0.5}});
  return s;
}

// ---------------------------------------------------------------------------

Outcome c1_standard_metrics() {
  Checker c;
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> z(0.1, 20.0);
  std::uniform_real_distribution<double> f(0.3, 2.5);
  std::bernoulli_distribution hole(0.05);
  const MetricConfig cfg;
  int evaluated = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    Image<double> gt(8, 8), pred(8, 8);
    for (Eigen::Index i = 0; i < 64; ++i) {
      gt.data()[i] = hole(rng) ? 0.0 : z(rng);
      pred.data()[i] = hole(rng) ? 0.0 : gt.data()[i] * f(rng);
    }
    const DepthMap g(gt), p(pred);
    const Mask valid = valid_pixels(p, g);
    if (valid.count() == 0) continue;
    ++evaluated;
    const auto m = global_metrics(p, g, valid, cfg);
    const auto pairs = oracle::valid_pairs(pred, gt, valid);
    const double ref[] = {oracle::rel(pairs), oracle::srel(pairs), oracle::rms(pairs), oracle::log_rms(pairs),
                          oracle::delta(pairs, 1.25), oracle::delta(pairs, 1.5625), oracle::delta(pairs, 1.953125)};
    const double got[] = {m.rel, m.srel, m.rms, m.log_rms, m.delta[0], m.delta[1], m.delta[2]};
    for (int k = 0; k < 7; ++k) {
      c.expect(std::abs(got[k] - ref[k]) <= 1e-12, "trial " + std::to_string(trial) + " metric " + std::to_string(k));
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 5.0, "runtime " + fmt(secs) + " s");
  c.expect(evaluated == 1000, "only " + std::to_string(evaluated) + " pairs had valid pixels");
  if (c.out.pass) c.out.detail = std::to_string(evaluated) + " pairs, 7 metrics within 1e-12, " + fmt(secs) + " s";
  return c.out;
}

Outcome c2_plane_recovery() {
  Checker c;
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> ang(0.0, 80.0);
  std::uniform_real_distribution<double> az(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> off(1.0, 10.0);
  std::uniform_real_distribution<double> gross(1.5, 3.0);
  // Narrow field of view keeps planes tilted up to 80 degrees in front of the camera everywhere.
  const Eigen::Index w = 64, h = 48;
  const double focal = 400.0;
  MetricConfig cfg;
  cfg.scaling_mode = ScalingMode::none;
  double worst_normal = 0, worst_plan = 0, worst_outlier = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec3d normal = tilt(ang(rng), az(rng)) * Vec3d(0, 0, -1);
    const Planed truth = Planed::from_coefficients(normal, off(rng));
    const auto spec = plane_scene(truth, w, h, focal);
    const auto scene = synth::render(spec);
    const Mask all = Mask::Constant(h, w, true);

    const auto fit = fit_plane(backproject(scene.depth, spec.intrinsics, all), cfg.ransac);
    const double e = normal_angle_deg(fit.plane.normal, truth.normal);
    worst_normal = std::max(worst_normal, e);
    c.expect(e < 1e-6, "trial " + std::to_string(trial) + " normal error " + fmt(e) + " deg");

    const auto pr = planarity_error(scene.depth, scene.depth, scene.masks[0], spec.intrinsics, cfg);
    worst_plan = std::max(worst_plan, pr.eps_plan);
    c.expect(pr.eps_plan < 1e-9, "trial " + std::to_string(trial) + " eps_plan " + fmt(pr.eps_plan));

    // 5% gross outliers: depth multiplied far off the plane.
    Image<double> noisy = scene.depth.values();
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(noisy.size()));
    std::iota(idx.begin(), idx.end(), 0);
    std::shuffle(idx.begin(), idx.end(), rng);
    const auto n_out = static_cast<std::size_t>(std::lround(0.05 * static_cast<double>(noisy.size())));
    for (std::size_t i = 0; i < n_out; ++i) noisy.data()[idx[i]] *= gross(rng);
    const auto ofit = fit_plane(backproject(DepthMap(noisy), spec.intrinsics, all), cfg.ransac);
    const double eo = normal_angle_deg(ofit.plane.normal, truth.normal);
    worst_outlier = std::max(worst_outlier, eo);
    c.expect(eo < 0.1, "trial " + std::to_string(trial) + " outlier normal error " + fmt(eo) + " deg");
  }
  if (c.out.pass) {
    c.out.detail = "100 planes; worst normal error " + fmt(worst_normal) + " deg, eps_plan " + fmt(worst_plan) +
                   " m, with 5% outliers " + fmt(worst_outlier) + " deg";
  }
  return c.out;
}

Outcome c3_orientation_error() {
  Checker c;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> ang(0.0, 30.0);
  std::uniform_real_distribution<double> az(0.0, 2.0 * M_PI);
  const Eigen::Index w = 64, h = 48;
  const double focal = 200.0;
  const MetricConfig cfg;  // median scaling on
  double worst = 0;
  for (double alpha : {1.0, 5.0, 20.0}) {
    for (int trial = 0; trial < 10; ++trial) {
      const Vec3d gt_n = tilt(ang(rng), az(rng)) * Vec3d(0, 0, -1);
      // Rotate about an axis perpendicular to the gt normal by exactly alpha.
      const Vec3d axis = gt_n.cross(Vec3d(std::cos(az(rng)), std::sin(az(rng)), 0.3)).normalized();
      const Vec3d pred_n = Eigen::AngleAxisd(alpha * M_PI / 180.0, axis) * gt_n;
      const Vec3d anchor(0.05, -0.02, 3.0);
      const auto gt_spec = plane_scene(Planed::through(gt_n, anchor), w, h, focal);
      const auto pred_spec = plane_scene(Planed::through(pred_n, anchor), w, h, focal);
      const auto gt = synth::render(gt_spec);
      const auto pred = synth::render(pred_spec);
      const auto r = planarity_error(pred.depth, gt.depth, gt.masks[0], gt_spec.intrinsics, cfg);
      const double e = std::abs(r.eps_orie - alpha);
      worst = std::max(worst, e);
      c.expect(e < 1e-6, "alpha " + fmt(alpha) + " got " + fmt(r.eps_orie));
    }
  }
  if (c.out.pass) c.out.detail = "alpha in {1,5,20} deg x 10 planes; worst |eps_orie - alpha| " + fmt(worst) + " deg";
  return c.out;
}

Outcome c4_distance_transform() {
  Checker c;
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> density(0.001, 0.3);
  for (int trial = 0; trial < 200; ++trial) {
    std::bernoulli_distribution on(density(rng));
    Mask m(32, 32);
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = on(rng);
    if (m.count() == 0) m(static_cast<Eigen::Index>(rng() % 32), static_cast<Eigen::Index>(rng() % 32)) = true;
    const auto fast = squared_distance_transform(m);
    const auto slow = oracle::brute_force_sq_dt(m);
    c.expect((fast == slow).all(), "trial " + std::to_string(trial) + " differs");
    const auto d = distance_transform(EdgeMap{m});
    c.expect((d.data == slow.cast<double>().sqrt()).all(), "trial " + std::to_string(trial) + " sqrt differs");
  }
  if (c.out.pass) c.out.detail = "200 random 32x32 maps identical to brute force";
  return c.out;
}

Outcome c5_dbe_shift() {
  Checker c;
  MetricConfig cfg;
  cfg.dt_truncation = 10.0;
  const Eigen::Index w = 100, h = 40, col = 20;
  auto line = [&](Eigen::Index at) {
    EdgeMap e{Mask::Constant(h, w, false)};
    e.bits.col(at).setConstant(true);
    return e;
  };
  const auto gt = line(col);
  for (int k = 1; k <= 8; ++k) {
    const auto r = dbe(line(col + k), gt, cfg);
    c.expect(r.eps_acc == k && r.eps_comp == k,
             "shift " + std::to_string(k) + " gave " + fmt(r.eps_acc) + "/" + fmt(r.eps_comp));
  }
  auto pred = gt;
  pred.bits.col(col + 50).setConstant(true);
  const auto r = dbe(pred, gt, cfg);
  c.expect(r.eps_acc == 0.0 && r.eps_comp == 0.0, "spurious line changed the errors");
  c.expect(r.counted_pred_edges == h, "counted " + std::to_string(r.counted_pred_edges) + " of " +
                                          std::to_string(pred.bits.count()) + " predicted edges");
  c.expect(r.counted_gt_edges == h, "gt edges miscounted");
  if (c.out.pass) {
    c.out.detail = "shift k=1..8 gives exactly k; spurious line: " + std::to_string(r.counted_pred_edges) + " of " +
                   std::to_string(pred.bits.count()) + " predicted edges counted";
  }
  return c.out;
}

Outcome c6_dde() {
  Checker c;
  MetricConfig cfg;
  cfg.scaling_mode = ScalingMode::none;
  cfg.dde_ref_depth = 3.0;
  const DepthMap two(Image<double>::Constant(40, 50, 2.0));
  const Mask all = Mask::Constant(40, 50, true);
  auto sums_to_one = [](const DdeResult& r, double t) {
    // Counts add up to T exactly; the float sum may differ from 1 by at most an ulp.
    const double counts = std::round(r.eps0 * t) + std::round(r.eps_plus * t) + std::round(r.eps_minus * t);
    return counts == t && std::abs(r.eps0 + r.eps_plus + r.eps_minus - 1.0) <= 2.3e-16;
  };
  for (double f : {0.1, 0.25, 0.5}) {
    const auto pred = synth::perturb(two, {synth::PerturbKind::side_flip_about, 3.0, 0.0, f}, 6);
    auto r = dde(pred, two, all, cfg);
    c.expect(r.eps_plus == f && r.eps_minus == 0.0, "flip pred: f=" + fmt(f) + " eps_plus " + fmt(r.eps_plus));
    c.expect(r.eps0 + r.eps_plus + r.eps_minus == 1.0, "sum != 1 for f=" + fmt(f));
    // Flipping the ground truth instead moves the same fraction to eps_minus.
    r = dde(two, pred, all, cfg);
    c.expect(r.eps_minus == f && r.eps_plus == 0.0, "flip gt: f=" + fmt(f) + " eps_minus " + fmt(r.eps_minus));
  }
  std::mt19937_64 rng(66);
  std::uniform_real_distribution<double> z(0.5, 6.0);
  int exact = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Image<double> g(7, 9), p(7, 9);
    for (Eigen::Index i = 0; i < g.size(); ++i) {
      g.data()[i] = z(rng);
      p.data()[i] = z(rng);
    }
    const auto r = dde(DepthMap(p), DepthMap(g), Mask::Constant(7, 9, true), cfg);
    c.expect(sums_to_one(r, 63.0), "trial " + std::to_string(trial) + " fractions do not sum to 1");
    exact += (r.eps0 + r.eps_plus + r.eps_minus == 1.0);
  }
  if (c.out.pass) {
    c.out.detail = "f in {0.1,0.25,0.5} exact; 500 random maps: counts sum to T, float sum == 1 bit-exact in " +
                   std::to_string(exact) + "/500 (others within 1 ulp)";
  }
  return c.out;
}

Outcome c7_scale_invariance() {
  Checker c;
  const auto spec = synth::demo_room("room", 160, 120, 7);
  const auto scene = synth::render(spec);
  DepthMap pred = synth::perturb(scene.depth, {synth::PerturbKind::sinusoidal_ripple, 0.03, 23.0}, 0);
  pred = synth::perturb(pred, {synth::PerturbKind::uniform_scale, 1.3}, 0);
  Image<double> noisy = pred.values();
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n(0.0, 0.003);
  for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy.data()[i] += n(rng);

  MetricConfig cfg;
  cfg.intrinsics = spec.intrinsics;
  auto eval = [&](double k) {
    SceneInputs in;
    in.scene = "room";
    in.gt = scene.depth;
    in.pred = DepthMap(noisy * k);
    for (const auto& m : scene.masks) in.planes.push_back(m);
    in.gt_edges = scene.edges;
    return evaluate_scene(in, cfg);
  };
  const auto base = eval(1.0);
  c.expect(base.ok() && base.planarity.size() == 4 && base.dde.has_value(), "baseline evaluation incomplete");
  double worst = 0;
  for (double k : {0.1, 1.0, 10.0}) {
    const auto r = eval(k);
    c.expect(r.ok() && r.planarity.size() == base.planarity.size(), "k=" + fmt(k) + " evaluation incomplete");
    if (!c.out.pass) break;
    for (std::size_t i = 0; i < r.planarity.size(); ++i) {
      for (auto [a, b] : {std::pair{r.planarity[i].eps_plan, base.planarity[i].eps_plan},
                          {r.planarity[i].eps_orie, base.planarity[i].eps_orie}}) {
        worst = std::max(worst, std::abs(a - b));
        c.expect(std::abs(a - b) <= 1e-9, "k=" + fmt(k) + " planarity moved by " + fmt(std::abs(a - b)));
      }
    }
    for (auto [a, b] : {std::pair{r.dde->eps0, base.dde->eps0}, {r.dde->eps_plus, base.dde->eps_plus},
                        {r.dde->eps_minus, base.dde->eps_minus}}) {
      worst = std::max(worst, std::abs(a - b));
      c.expect(std::abs(a - b) <= 1e-9, "k=" + fmt(k) + " dde moved by " + fmt(std::abs(a - b)));
    }
  }
  if (c.out.pass) c.out.detail = "k in {0.1,1,10}: 4 planes + DDE, largest change " + fmt(worst);
  return c.out;
}

Outcome c8_binned_consistency() {
  Checker c;
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> z(0.05, 30.0);
  std::uniform_real_distribution<double> f(0.5, 1.6);
  const MetricConfig cfg;
  double worst = 0;
  for (int trial = 0; trial < 200; ++trial) {
    Image<double> gt(24, 32), pred(24, 32);
    for (Eigen::Index i = 0; i < gt.size(); ++i) {
      gt.data()[i] = z(rng);
      pred.data()[i] = gt.data()[i] * f(rng);
    }
    const DepthMap g(gt), p(pred);
    const Mask valid = valid_pixels(p, g);
    const auto b = binned_errors(p, g, valid, cfg);
    c.expect(b.total() == valid.count(), "bin counts do not sum to T");
    double sum = 0;
    for (const auto& bin : b.bins) {
      if (bin.count) sum += static_cast<double>(bin.count) * *bin.mean_rel;
    }
    const double rec = sum / static_cast<double>(b.total());
    const double rel = rel_error(p, g, valid);
    const double d = std::abs(rec - rel) / rel;
    worst = std::max(worst, d);
    c.expect(d <= 1e-12, "recombined rel off by " + fmt(d));
  }
  if (c.out.pass) {
    c.out.detail = "200 maps; counts sum to T; recombined rel within " + fmt(worst) +
                   " relative (summation order differs, tolerance 1e-12)";
  }
  return c.out;
}

Outcome c9_augmentation() {
  Checker c;
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> x(0.0, 1.0);
  RgbImage img(37, 23);
  for (int ch = 0; ch < 3; ++ch)
    for (Eigen::Index i = 0; i < img.channel(ch).size(); ++i) img.channel(ch).data()[i] = x(rng);
  c.expect(apply(apply(img, Augmentation::flip_h()), Augmentation::flip_h()) == img, "flip_h twice");
  c.expect(apply(apply(img, Augmentation::flip_v()), Augmentation::flip_v()) == img, "flip_v twice");
  const auto gray = apply(img, Augmentation::saturation_scale(0.0));
  c.expect((gray.channel(0) == gray.channel(1)).all() && (gray.channel(1) == gray.channel(2)).all(), "sat x0");
  for (double var : {1e-5, 1e-2, 1.0}) {
    c.expect(apply(img, Augmentation::gaussian_noise(var, 123)) == apply(img, Augmentation::gaussian_noise(var, 123)),
             "gaussian noise not reproducible");
  }
  c.expect(apply(img, Augmentation::salt_pepper(0.16, 5)) == apply(img, Augmentation::salt_pepper(0.16, 5)),
           "salt and pepper not reproducible");
  std::set<std::string> labels;
  for (const auto& p : table_presets()) labels.insert(p.label);
  const std::set<std::string> expected{"LR", "UD", "γ=0.2", "γ=2", "Norm.", "GBR", "BRG", "+9°", "+90°", "×0.9", "×0"};
  c.expect(labels == expected && table_presets().size() == 11, "preset labels differ from the table columns");
  if (c.out.pass) c.out.detail = "flips bit-exact, x0 grayscale, seeded noise reproducible, 11 table presets";
  return c.out;
}

/// Shared by criteria 10 and 11.
struct EndToEnd {
  bool ran = false;
  std::string error;
  fs::path out1, out2;
  double seconds_per_image = 0;
  int scenes = 0;
};

EndToEnd run_end_to_end(const std::string& cli) {
  EndToEnd e;
  const fs::path root = fs::temp_directory_path() / "sidebench_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto scene_file = root / "scenes.json";
  std::ofstream(scene_file) << R"({
  "width": 640, "height": 480,
  "intrinsics": {"fx": 525, "fy": 525, "cx": 319.5, "cy": 239.5},
  "max_depth": 20, "seed": 10, "pred_edges": "detect",
  "demo": {"count": 20, "seed": 1000, "perturb": [
    {"kind": "sinusoidal_ripple", "value": 0.05, "wavelength": 37},
    {"kind": "uniform_scale", "value": 1.1},
    {"kind": "side_flip_about", "value": 5.0, "fraction": 0.05}
  ]}
})";
  const auto data = root / "data";
  auto sh = [](const std::string& cmd) { return std::system(cmd.c_str()); };
  const std::string q = "\"";
  if (sh(q + cli + q + " synth --scene " + q + scene_file.string() + q + " --out " + q + data.string() + q +
         " > /dev/null") != 0) {
    e.error = "synth command failed";
    return e;
  }
  e.out1 = root / "run1";
  e.out2 = root / "run2";
  const auto run = [&](const fs::path& out) {
    return sh("SIDEBENCH_THREADS=1 " + q + cli + q + " run --gt " + q + data.string() + q + " --pred " + q +
              (data / "pred").string() + q + " --out " + q + out.string() + q + " > /dev/null");
  };
  const auto t0 = std::chrono::steady_clock::now();
  const int rc1 = run(e.out1);
  const double secs = seconds_since(t0);
  const int rc2 = run(e.out2);
  if (rc1 != 0 || rc2 != 0) {
    e.error = "run command failed";
    return e;
  }
  for (const auto& entry : fs::directory_iterator(data / "depth")) e.scenes += entry.path().extension() == ".png";
  e.seconds_per_image = secs / std::max(1, e.scenes);
  e.ran = true;
  return e;
}

Outcome c10_end_to_end(const EndToEnd& e) {
  Checker c;
  c.expect(e.ran, e.error);
  if (!e.ran) return c.out;
  c.expect(e.scenes == 20, std::to_string(e.scenes) + " scenes");
  for (const char* name : {"report.json", "summary.csv", "errorband.csv"}) {
    const auto a = slurp(e.out1 / name);
    c.expect(!a.empty() && a == slurp(e.out2 / name), std::string(name) + " differs between runs");
  }
  const auto j = nlohmann::json::parse(slurp(e.out1 / "report.json"));
  long with_all = 0;
  for (const auto& s : j.at("scenes")) {
    with_all += s.contains("global") && s.contains("dbe") && s.contains("dde") && !s.at("planarity").empty();
  }
  c.expect(with_all == 20, "only " + std::to_string(with_all) + " scenes carry every metric");
  c.expect(e.seconds_per_image <= 1.0, fmt(e.seconds_per_image) + " s per image");
  if (c.out.pass) {
    c.out.detail = "20 scenes 640x480, byte-identical outputs, " + fmt(e.seconds_per_image) +
                   " s per image with one thread";
  }
  return c.out;
}

Outcome c11_schema(const EndToEnd& e) {
  Checker c;
  c.expect(e.ran, e.error);
  if (!e.ran) return c.out;
  const auto csv = slurp(e.out1 / "summary.csv");
  const auto header = csv.substr(0, csv.find('\n'));
  const std::string expected =
      "scene,rel,log10,rms,sigma1,sigma2,sigma3,pe_plan,pe_orie,dbe_acc,dbe_comp,dde_0,dde_minus,dde_plus";
  c.expect(header == expected, "header is " + header);
  const auto rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  c.expect(rows == e.scenes, std::to_string(rows) + " data rows");
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    c.expect(std::count(line.begin(), line.end(), ',') == 13, "row with wrong column count");
    c.expect(line.find(",,") == std::string::npos && line.back() != ',', "row with an empty metric: " + line);
  }
  if (c.out.pass) c.out.detail = "13 metric columns in table order, every cell filled";
  return c.out;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path to sidebench CLI>\n";
    return 2;
  }
  const std::string cli = argv[1];
  EndToEnd e2e;
  bool e2e_done = false;
  auto end_to_end = [&]() -> const EndToEnd& {
    if (!e2e_done) {
      e2e = run_end_to_end(cli);
      e2e_done = true;
    }
    return e2e;
  };

  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"standard metrics match brute force", c1_standard_metrics},
      {"plane recovery", c2_plane_recovery},
      {"orientation error exactness", c3_orientation_error},
      {"distance transform exactness", c4_distance_transform},
      {"DBE shift law and truncation", c5_dbe_shift},
      {"DDE exactness", c6_dde},
      {"scale invariance", c7_scale_invariance},
      {"binned/global consistency", c8_binned_consistency},
      {"augmentation determinism and algebra", c9_augmentation},
      {"end-to-end determinism and throughput", [&] { return c10_end_to_end(end_to_end()); }},
      {"report schema", [&] { return c11_schema(end_to_end()); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << (i + 1) << ": " << criteria[i].first << " -- "
              << o.detail << std::endl;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
