#include "sidebench/report.hpp"

#include "sidebench/config.hpp"
#include "sidebench/io.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <thread>

namespace sidebench {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::optional<fs::path> find_depth_file(const fs::path& dir, const std::string& scene) {
  for (const char* ext : {".png", ".pfm"}) {
    auto p = dir / (scene + ext);
    if (fs::exists(p)) return p;
  }
  return std::nullopt;
}

Mask checked_mask(const fs::path& path, const DepthMap& gt) {
  Mask m = load_binary_png(path);
  require_same_size(m.cols(), m.rows(), gt.width(), gt.height(), path.filename().c_str());
  return m;
}

}  // namespace

std::vector<std::string> list_scenes(const fs::path& dataset_dir) {
  const auto dir = dataset_dir / "depth";
  if (!fs::is_directory(dir)) throw Error("missing directory " + dir.string());
  std::vector<std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (!e.is_regular_file()) continue;
    const auto ext = e.path().extension();
    if (ext == ".png" || ext == ".pfm") out.push_back(e.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SceneInputs load_scene(const fs::path& dataset_dir, const fs::path& pred_dir, const std::string& scene,
                       const MetricConfig& cfg) {
  SceneInputs in;
  in.scene = scene;
  const auto gt_path = find_depth_file(dataset_dir / "depth", scene);
  if (!gt_path) throw Error("missing ground truth depth for " + scene);
  in.gt = load_depth(*gt_path, cfg);
  const auto pred_path = find_depth_file(pred_dir, scene);
  if (!pred_path) throw Error("missing prediction for " + scene);
  in.pred = load_depth(*pred_path, cfg);
  require_same_size(in.pred.width(), in.pred.height(), in.gt.width(), in.gt.height(), "prediction vs ground truth");

  const auto masks = dataset_dir / "masks";
  if (auto p = masks / "invalid" / (scene + ".png"); fs::exists(p)) in.invalid = checked_mask(p, in.gt);
  if (auto p = masks / "transparent" / (scene + ".png"); fs::exists(p)) in.transparent = checked_mask(p, in.gt);
  for (auto label : {MaskLabel::wall, MaskLabel::floor, MaskLabel::table}) {
    const auto dir = masks / std::string(to_string(label));
    if (!fs::is_directory(dir)) continue;
    std::vector<std::pair<int, fs::path>> found;
    const std::string prefix = scene + "_";
    for (const auto& e : fs::directory_iterator(dir)) {
      const auto stem = e.path().stem().string();
      if (e.path().extension() != ".png" || stem.rfind(prefix, 0) != 0) continue;
      const auto suffix = stem.substr(prefix.size());
      if (suffix.empty() || !std::all_of(suffix.begin(), suffix.end(), ::isdigit)) continue;
      found.emplace_back(std::stoi(suffix), e.path());
    }
    std::sort(found.begin(), found.end());
    for (const auto& [inst, path] : found) in.planes.push_back({label, inst, checked_mask(path, in.gt)});
  }
  if (auto p = dataset_dir / "edges" / (scene + ".png"); fs::exists(p)) in.gt_edges = EdgeMap{checked_mask(p, in.gt)};
  if (auto p = pred_dir / "edges" / (scene + ".png"); fs::exists(p)) in.pred_edges = EdgeMap{checked_mask(p, in.gt)};
  return in;
}

SceneRecord evaluate_scene(const SceneInputs& in, const MetricConfig& cfg) {
  SceneRecord rec;
  rec.scene = in.scene;
  try {
    Mask excluded = Mask::Constant(in.gt.height(), in.gt.width(), false);
    if (in.invalid) excluded = excluded || *in.invalid;
    if (in.transparent && cfg.exclude_transparent) excluded = excluded || *in.transparent;
    const Mask valid = valid_pixels(in.pred, in.gt, &excluded);
    rec.valid_pixels = static_cast<long>(valid.count());
    if (rec.valid_pixels == 0) throw Error("no valid pixels");

    rec.global = global_metrics(in.pred, in.gt, valid, cfg);
    rec.binned = binned_errors(in.pred, in.gt, valid, cfg);

    DepthMap scaled = in.pred;
    if (cfg.scaling_mode == ScalingMode::median_ratio) {
      auto s = median_scale(in.pred, in.gt, valid);
      rec.scale = s.scale;
      scaled = std::move(s.depth);
    }

    if (in.planes.empty()) rec.flags.push_back("planarity_skipped:no_plane_masks");
    const auto k = resolve_intrinsics(cfg, in.gt.width(), in.gt.height());
    for (const auto& mask : in.planes) {
      try {
        rec.planarity.push_back(planarity_error_prescaled(scaled, in.gt, valid, mask, k, cfg));
      } catch (const Error& e) {
        rec.flags.push_back("planarity_failed:" + std::string(to_string(mask.label)) + "_" +
                            std::to_string(mask.instance_id) + ":" + e.what());
      }
    }

    // Scaling already applied above.
    MetricConfig unscaled = cfg;
    unscaled.scaling_mode = ScalingMode::none;
    rec.dde = dde(scaled, in.gt, valid, unscaled);
    rec.dde->scale = rec.scale;

    std::optional<EdgeMap> pred_edges = in.pred_edges;
    if (!pred_edges && cfg.edge_fallback) pred_edges = extract_depth_edges(in.pred, cfg.edge_high, cfg.edge_low);
    if (!in.gt_edges) {
      rec.flags.push_back("dbe_skipped:no_gt_edges");
    } else if (!pred_edges) {
      rec.flags.push_back("dbe_skipped:no_pred_edges");
    } else if (!in.gt_edges->bits.any()) {
      rec.flags.push_back("dbe_skipped:empty_gt_edges");
    } else if (!pred_edges->bits.any()) {
      rec.flags.push_back("dbe_skipped:empty_pred_edges");
    } else {
      rec.dbe = dbe(*pred_edges, *in.gt_edges, cfg);
      if (!in.pred_edges) rec.flags.push_back("dbe_pred_edges:fallback_detector");
      if (rec.dbe->acc_truncated_out) rec.flags.push_back("dbe_acc:no_edges_within_truncation");
      if (rec.dbe->comp_truncated_out) rec.flags.push_back("dbe_comp:no_edges_within_truncation");
    }
  } catch (const Error& e) {
    SceneRecord failed;
    failed.scene = in.scene;
    failed.error = e.what();
    return failed;
  }
  return rec;
}

namespace {

struct Mean {
  double sum = 0.0;
  long n = 0;
  void add(double v) {
    sum += v;
    ++n;
  }
  std::optional<double> get() const {
    if (n == 0) return std::nullopt;
    return sum / static_cast<double>(n);
  }
};

}  // namespace

AggregateBlock aggregate(const std::vector<SceneRecord>& scenes) {
  AggregateBlock a;
  a.scene_count = static_cast<long>(scenes.size());
  Mean rel, srel, rms, log_rms, d1, d2, d3, acc, comp, e0, em, ep;
  std::vector<PlanarityResult> planes;
  for (const auto& s : scenes) {
    if (!s.ok()) {
      ++a.failed_scenes;
      continue;
    }
    if (s.global) {
      rel.add(s.global->rel);
      srel.add(s.global->srel);
      rms.add(s.global->rms);
      log_rms.add(s.global->log_rms);
      d1.add(s.global->delta[0]);
      d2.add(s.global->delta[1]);
      d3.add(s.global->delta[2]);
    }
    if (s.dbe) {
      acc.add(s.dbe->eps_acc);
      comp.add(s.dbe->eps_comp);
    }
    if (s.dde) {
      e0.add(s.dde->eps0);
      em.add(s.dde->eps_minus);
      ep.add(s.dde->eps_plus);
    }
    planes.insert(planes.end(), s.planarity.begin(), s.planarity.end());
  }
  a.rel = rel.get();
  a.srel = srel.get();
  a.rms = rms.get();
  a.log_rms = log_rms.get();
  a.delta1 = d1.get();
  a.delta2 = d2.get();
  a.delta3 = d3.get();
  a.dbe_acc = acc.get();
  a.dbe_comp = comp.get();
  a.dde0 = e0.get();
  a.dde_minus = em.get();
  a.dde_plus = ep.get();
  if (!planes.empty()) a.planarity = aggregate_planarity(planes);
  return a;
}

MetricConfig resolve_config(const fs::path& dataset_dir, const std::optional<fs::path>& config_path) {
  MetricConfig cfg;
  if (const auto p = dataset_dir / "sidebench.cfg"; fs::exists(p)) apply_config_file(p, cfg);
  if (config_path) apply_config_file(*config_path, cfg);
  cfg.check();
  return cfg;
}

unsigned default_thread_count() {
  unsigned n = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("SIDEBENCH_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

MetricReport run_evaluation(const fs::path& dataset_dir, const fs::path& pred_dir,
                            const std::optional<fs::path>& config_path, unsigned threads) {
  MetricReport report;
  report.config = resolve_config(dataset_dir, config_path);
  const auto ids = list_scenes(dataset_dir);
  report.scenes.resize(ids.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) {
      try {
        report.scenes[i] = evaluate_scene(load_scene(dataset_dir, pred_dir, ids[i], report.config), report.config);
      } catch (const std::exception& e) {
        report.scenes[i] = SceneRecord{};
        report.scenes[i].scene = ids[i];
        report.scenes[i].error = e.what();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads == 0 ? default_thread_count() : threads,
                                                     static_cast<unsigned>(std::max<std::size_t>(ids.size(), 1))));
  if (n == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  }
  report.aggregate = aggregate(report.scenes);
  return report;
}

// ---------------------------------------------------------------- JSON

namespace {

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

std::optional<double> get_opt(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

json plane_json(const Planed& p) {
  return {{"normal", {p.normal.x(), p.normal.y(), p.normal.z()}}, {"offset", p.offset}};
}

Planed plane_from(const json& j) {
  const auto n = j.at("normal").get<std::array<double, 3>>();
  return Planed{Vec3d(n[0], n[1], n[2]), j.at("offset").get<double>()};
}

json means_json(const PlanarityMeans& m) {
  return {{"count", m.count}, {"eps_plan", m.eps_plan}, {"eps_orie", m.eps_orie}};
}

PlanarityMeans means_from(const json& j) {
  return {j.at("eps_plan").get<double>(), j.at("eps_orie").get<double>(), j.at("count").get<long>()};
}

json config_json(const MetricConfig& c) {
  return {{"delta_base", c.delta_base},
          {"bin_width", c.bin_width},
          {"dt_truncation", c.dt_truncation},
          {"dde_ref_depth", c.dde_ref_depth},
          {"max_depth", c.max_depth},
          {"scaling_mode", std::string(to_string(c.scaling_mode))},
          {"ransac_iterations", c.ransac.iterations},
          {"ransac_inlier_threshold", c.ransac.inlier_threshold},
          {"ransac_seed", c.ransac.seed},
          {"edge_fallback", c.edge_fallback},
          {"edge_high", c.edge_high},
          {"edge_low", c.edge_low},
          {"exclude_transparent", c.exclude_transparent},
          {"fx", c.intrinsics.fx},
          {"fy", c.intrinsics.fy},
          {"cx", c.intrinsics.cx},
          {"cy", c.intrinsics.cy}};
}

MetricConfig config_from(const json& j) {
  MetricConfig c;
  c.delta_base = j.at("delta_base").get<double>();
  c.bin_width = j.at("bin_width").get<double>();
  c.dt_truncation = j.at("dt_truncation").get<double>();
  c.dde_ref_depth = j.at("dde_ref_depth").get<double>();
  c.max_depth = j.at("max_depth").get<double>();
  c.scaling_mode = j.at("scaling_mode").get<std::string>() == "none" ? ScalingMode::none : ScalingMode::median_ratio;
  c.ransac.iterations = j.at("ransac_iterations").get<int>();
  c.ransac.inlier_threshold = j.at("ransac_inlier_threshold").get<double>();
  c.ransac.seed = j.at("ransac_seed").get<std::uint64_t>();
  c.edge_fallback = j.at("edge_fallback").get<bool>();
  c.edge_high = j.at("edge_high").get<double>();
  c.edge_low = j.at("edge_low").get<double>();
  c.exclude_transparent = j.at("exclude_transparent").get<bool>();
  c.intrinsics = {j.at("fx").get<double>(), j.at("fy").get<double>(), j.at("cx").get<double>(),
                  j.at("cy").get<double>()};
  return c;
}

json scene_json(const SceneRecord& s) {
  json j;
  j["scene"] = s.scene;
  j["status"] = s.ok() ? "ok" : "error";
  j["error"] = s.error ? json(*s.error) : json(nullptr);
  j["flags"] = s.flags;
  j["valid_pixels"] = s.valid_pixels;
  j["scale"] = s.scale;
  if (s.global) {
    j["global"] = {{"rel", s.global->rel},
                   {"srel", s.global->srel},
                   {"rms", s.global->rms},
                   {"log10", s.global->log_rms},
                   {"delta", s.global->delta}};
  } else {
    j["global"] = nullptr;
  }
  if (s.binned) {
    json bins = json::array();
    for (const auto& b : s.binned->bins) {
      bins.push_back({{"lower", b.lower},
                      {"upper", b.upper},
                      {"count", b.count},
                      {"mean_rel", opt(b.mean_rel)},
                      {"std_rel", opt(b.std_rel)},
                      {"mean_abs", opt(b.mean_abs)},
                      {"std_abs", opt(b.std_abs)},
                      {"rms", opt(b.rms)}});
    }
    j["binned"] = {{"bin_width", s.binned->bin_width}, {"bins", std::move(bins)}};
  } else {
    j["binned"] = nullptr;
  }
  json planes = json::array();
  for (const auto& p : s.planarity) {
    planes.push_back({{"label", std::string(to_string(p.label))},
                      {"instance", p.instance_id},
                      {"eps_plan", p.eps_plan},
                      {"eps_orie", p.eps_orie},
                      {"point_count", p.point_count},
                      {"pred_plane", plane_json(p.pred_plane)},
                      {"gt_plane", plane_json(p.gt_plane)}});
  }
  j["planarity"] = std::move(planes);
  if (s.dbe) {
    j["dbe"] = {{"eps_acc", s.dbe->eps_acc},
                {"eps_comp", s.dbe->eps_comp},
                {"counted_pred_edges", s.dbe->counted_pred_edges},
                {"counted_gt_edges", s.dbe->counted_gt_edges},
                {"acc_truncated_out", s.dbe->acc_truncated_out},
                {"comp_truncated_out", s.dbe->comp_truncated_out}};
  } else {
    j["dbe"] = nullptr;
  }
  if (s.dde) {
    j["dde"] = {{"eps0", s.dde->eps0},
                {"eps_plus", s.dde->eps_plus},
                {"eps_minus", s.dde->eps_minus},
                {"ref_depth", s.dde->ref_depth},
                {"scale", s.dde->scale}};
  } else {
    j["dde"] = nullptr;
  }
  return j;
}

SceneRecord scene_from(const json& j) {
  SceneRecord s;
  s.scene = j.at("scene").get<std::string>();
  if (!j.at("error").is_null()) s.error = j.at("error").get<std::string>();
  s.flags = j.at("flags").get<std::vector<std::string>>();
  s.valid_pixels = j.at("valid_pixels").get<long>();
  s.scale = j.at("scale").get<double>();
  if (const auto& g = j.at("global"); !g.is_null()) {
    GlobalMetrics m;
    m.rel = g.at("rel").get<double>();
    m.srel = g.at("srel").get<double>();
    m.rms = g.at("rms").get<double>();
    m.log_rms = g.at("log10").get<double>();
    m.delta = g.at("delta").get<std::array<double, 3>>();
    s.global = m;
  }
  if (const auto& b = j.at("binned"); !b.is_null()) {
    BinnedErrors be;
    be.bin_width = b.at("bin_width").get<double>();
    for (const auto& jb : b.at("bins")) {
      BinStats st;
      st.lower = jb.at("lower").get<double>();
      st.upper = jb.at("upper").get<double>();
      st.count = jb.at("count").get<long>();
      st.mean_rel = get_opt(jb, "mean_rel");
      st.std_rel = get_opt(jb, "std_rel");
      st.mean_abs = get_opt(jb, "mean_abs");
      st.std_abs = get_opt(jb, "std_abs");
      st.rms = get_opt(jb, "rms");
      be.bins.push_back(st);
    }
    s.binned = std::move(be);
  }
  for (const auto& jp : j.at("planarity")) {
    PlanarityResult p;
    const auto label = parse_mask_label(jp.at("label").get<std::string>());
    if (!label) throw Error("report: unknown plane label");
    p.label = *label;
    p.instance_id = jp.at("instance").get<int>();
    p.eps_plan = jp.at("eps_plan").get<double>();
    p.eps_orie = jp.at("eps_orie").get<double>();
    p.point_count = jp.at("point_count").get<Eigen::Index>();
    p.pred_plane = plane_from(jp.at("pred_plane"));
    p.gt_plane = plane_from(jp.at("gt_plane"));
    s.planarity.push_back(p);
  }
  if (const auto& d = j.at("dbe"); !d.is_null()) {
    DbeResult r;
    r.eps_acc = d.at("eps_acc").get<double>();
    r.eps_comp = d.at("eps_comp").get<double>();
    r.counted_pred_edges = d.at("counted_pred_edges").get<long>();
    r.counted_gt_edges = d.at("counted_gt_edges").get<long>();
    r.acc_truncated_out = d.at("acc_truncated_out").get<bool>();
    r.comp_truncated_out = d.at("comp_truncated_out").get<bool>();
    s.dbe = r;
  }
  if (const auto& d = j.at("dde"); !d.is_null()) {
    DdeResult r;
    r.eps0 = d.at("eps0").get<double>();
    r.eps_plus = d.at("eps_plus").get<double>();
    r.eps_minus = d.at("eps_minus").get<double>();
    r.ref_depth = d.at("ref_depth").get<double>();
    r.scale = d.at("scale").get<double>();
    s.dde = r;
  }
  return s;
}

json aggregate_json(const AggregateBlock& a) {
  json j = {{"scene_count", a.scene_count},
            {"failed_scenes", a.failed_scenes},
            {"rel", opt(a.rel)},
            {"srel", opt(a.srel)},
            {"rms", opt(a.rms)},
            {"log10", opt(a.log_rms)},
            {"sigma1", opt(a.delta1)},
            {"sigma2", opt(a.delta2)},
            {"sigma3", opt(a.delta3)},
            {"dbe_acc", opt(a.dbe_acc)},
            {"dbe_comp", opt(a.dbe_comp)},
            {"dde_0", opt(a.dde0)},
            {"dde_minus", opt(a.dde_minus)},
            {"dde_plus", opt(a.dde_plus)}};
  if (a.planarity) {
    json per_label = json::object();
    for (const auto& [label, m] : a.planarity->per_label) per_label[std::string(to_string(label))] = means_json(m);
    j["planarity"] = {{"combined", means_json(a.planarity->combined)}, {"per_label", std::move(per_label)}};
  } else {
    j["planarity"] = nullptr;
  }
  return j;
}

AggregateBlock aggregate_from(const json& j) {
  AggregateBlock a;
  a.scene_count = j.at("scene_count").get<long>();
  a.failed_scenes = j.at("failed_scenes").get<long>();
  a.rel = get_opt(j, "rel");
  a.srel = get_opt(j, "srel");
  a.rms = get_opt(j, "rms");
  a.log_rms = get_opt(j, "log10");
  a.delta1 = get_opt(j, "sigma1");
  a.delta2 = get_opt(j, "sigma2");
  a.delta3 = get_opt(j, "sigma3");
  a.dbe_acc = get_opt(j, "dbe_acc");
  a.dbe_comp = get_opt(j, "dbe_comp");
  a.dde0 = get_opt(j, "dde_0");
  a.dde_minus = get_opt(j, "dde_minus");
  a.dde_plus = get_opt(j, "dde_plus");
  if (const auto& p = j.at("planarity"); !p.is_null()) {
    PlanarityAggregate pa;
    pa.combined = means_from(p.at("combined"));
    for (const auto& [key, m] : p.at("per_label").items()) {
      const auto label = parse_mask_label(key);
      if (!label) throw Error("report: unknown plane label " + key);
      pa.per_label[*label] = means_from(m);
    }
    a.planarity = pa;
  }
  return a;
}

}  // namespace

json to_json(const MetricReport& report) {
  json scenes = json::array();
  for (const auto& s : report.scenes) scenes.push_back(scene_json(s));
  return {{"tool", {{"name", kToolName}, {"version", report.tool_version}}},
          {"config", config_json(report.config)},
          {"scenes", std::move(scenes)},
          {"aggregate", aggregate_json(report.aggregate)}};
}

MetricReport report_from_json(const json& j) {
  MetricReport r;
  try {
    r.tool_version = j.at("tool").at("version").get<std::string>();
    r.config = config_from(j.at("config"));
    for (const auto& s : j.at("scenes")) r.scenes.push_back(scene_from(s));
    r.aggregate = aggregate_from(j.at("aggregate"));
  } catch (const json::exception& e) {
    throw Error(std::string("malformed report: ") + e.what());
  }
  return r;
}

std::string report_json_text(const MetricReport& report) { return to_json(report).dump(2) + "\n"; }

// ---------------------------------------------------------------- CSV

namespace {

std::string cell(const std::optional<double>& v) { return v ? format_double(*v) : std::string(); }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string summary_csv(const MetricReport& report) {
  std::ostringstream o;
  bool first = true;
  for (const char* col : kSummaryColumns) {
    o << (first ? "" : ",") << col;
    first = false;
  }
  o << '\n';
  for (const auto& s : report.scenes) {
    std::vector<std::optional<double>> cols(13);
    if (s.global) {
      cols[0] = s.global->rel;
      cols[1] = s.global->log_rms;
      cols[2] = s.global->rms;
      cols[3] = s.global->delta[0];
      cols[4] = s.global->delta[1];
      cols[5] = s.global->delta[2];
    }
    if (!s.planarity.empty()) {
      const auto agg = aggregate_planarity(s.planarity);
      cols[6] = agg.combined.eps_plan;
      cols[7] = agg.combined.eps_orie;
    }
    if (s.dbe) {
      cols[8] = s.dbe->eps_acc;
      cols[9] = s.dbe->eps_comp;
    }
    if (s.dde) {
      cols[10] = s.dde->eps0;
      cols[11] = s.dde->eps_minus;
      cols[12] = s.dde->eps_plus;
    }
    o << csv_escape(s.scene);
    for (const auto& c : cols) o << ',' << cell(c);
    o << '\n';
  }
  return o.str();
}

std::string errorband_csv(const MetricReport& report) {
  // Pools per-scene bins: counts add, means are count-weighted, population
  // variance combines within- and between-scene spread.
  struct Pool {
    double lower = 0, upper = 0;
    long n = 0;
    double rel_sum = 0, sq_sum = 0;
    std::vector<std::tuple<long, double, double>> parts;  // count, mean_rel, std_rel
  };
  std::map<long, Pool> pools;
  for (const auto& s : report.scenes) {
    if (!s.binned) continue;
    for (std::size_t k = 0; k < s.binned->bins.size(); ++k) {
      const auto& b = s.binned->bins[k];
      if (b.count == 0) continue;
      auto& p = pools[static_cast<long>(k)];
      p.lower = b.lower;
      p.upper = b.upper;
      p.n += b.count;
      p.rel_sum += static_cast<double>(b.count) * *b.mean_rel;
      p.sq_sum += static_cast<double>(b.count) * *b.rms * *b.rms;
      p.parts.emplace_back(b.count, *b.mean_rel, *b.std_rel);
    }
  }
  std::ostringstream o;
  o << "bin_center,count,mean_rel,std_rel,rms\n";
  for (const auto& [k, p] : pools) {
    const double n = static_cast<double>(p.n);
    const double mean = p.rel_sum / n;
    double var = 0.0;
    for (const auto& [c, m, sd] : p.parts) var += static_cast<double>(c) * (sd * sd + (m - mean) * (m - mean));
    o << format_double(0.5 * (p.lower + p.upper)) << ',' << p.n << ',' << format_double(mean) << ','
      << format_double(std::sqrt(var / n)) << ',' << format_double(std::sqrt(p.sq_sum / n)) << '\n';
  }
  return o.str();
}

void emit(const MetricReport& report, const fs::path& out_dir) {
  fs::create_directories(out_dir);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream f(out_dir / name, std::ios::binary);
    f << text;
    if (!f) throw Error("cannot write " + (out_dir / name).string());
  };
  write("report.json", report_json_text(report));
  write("summary.csv", summary_csv(report));
  write("errorband.csv", errorband_csv(report));
}

// ---------------------------------------------------------------- augment

std::vector<fs::path> augment_dataset(const fs::path& dataset_dir, const std::string& preset_name,
                                      std::uint64_t seed, const fs::path& out_dir) {
  const auto preset = find_preset(preset_name, seed);
  const MetricConfig cfg = resolve_config(dataset_dir, std::nullopt);
  const auto rgb_dir = dataset_dir / "rgb";
  if (!fs::is_directory(rgb_dir)) throw Error("missing directory " + rgb_dir.string());
  std::vector<fs::path> rgb_files;
  for (const auto& e : fs::directory_iterator(rgb_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".png") rgb_files.push_back(e.path());
  }
  std::sort(rgb_files.begin(), rgb_files.end());

  // Every binary PNG below these directories is mirrored alongside the depth.
  std::vector<fs::path> binary_dirs;
  if (fs::is_directory(dataset_dir / "edges")) binary_dirs.push_back("edges");
  if (fs::is_directory(dataset_dir / "masks")) {
    for (const auto& e : fs::directory_iterator(dataset_dir / "masks")) {
      if (e.is_directory()) binary_dirs.push_back(fs::path("masks") / e.path().filename());
    }
  }
  std::sort(binary_dirs.begin(), binary_dirs.end());

  std::vector<fs::path> trees;
  for (std::size_t step = 0; step < preset.steps.size(); ++step) {
    const auto& [tag, base_aug] = preset.steps[step];
    const auto tree = out_dir / tag;
    fs::create_directories(tree / "rgb");
    fs::create_directories(tree / "depth");
    for (std::size_t i = 0; i < rgb_files.size(); ++i) {
      Augmentation aug = base_aug;
      // Distinct but reproducible noise per image.
      if (aug.is_stochastic()) aug.seed = seed + i;
      const auto scene = rgb_files[i].stem().string();
      save_rgb(tree / "rgb" / (scene + ".png"), apply(load_rgb(rgb_files[i]), aug));
    }
    if (fs::is_directory(dataset_dir / "depth")) {
      for (const auto& e : fs::directory_iterator(dataset_dir / "depth")) {
        const auto ext = e.path().extension();
        if (ext == ".png") {
          // Raw codes are mirrored directly so the copy is bit-exact.
          Image<std::uint16_t> raw = read_png_gray16(e.path());
          if (base_aug.kind == AugmentationKind::flip_h) raw = raw.rowwise().reverse().eval();
          if (base_aug.kind == AugmentationKind::flip_v) raw = raw.colwise().reverse().eval();
          write_png_gray16(tree / "depth" / e.path().filename(), raw);
        } else if (ext == ".pfm") {
          save_depth(tree / "depth" / e.path().filename(),
                     paired_gt_transform(load_depth(e.path(), cfg), base_aug), cfg.max_depth);
        }
      }
    }
    for (const auto& sub : binary_dirs) {
      fs::create_directories(tree / sub);
      for (const auto& e : fs::directory_iterator(dataset_dir / sub)) {
        if (e.path().extension() != ".png") continue;
        save_binary_png(tree / sub / e.path().filename(), paired_gt_transform(load_binary_png(e.path()), base_aug));
      }
    }
    if (fs::exists(dataset_dir / "sidebench.cfg")) {
      fs::copy_file(dataset_dir / "sidebench.cfg", tree / "sidebench.cfg", fs::copy_options::overwrite_existing);
    }
    trees.push_back(tree);
  }
  return trees;
}

}  // namespace sidebench
