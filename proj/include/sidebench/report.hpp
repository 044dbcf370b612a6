#pragma once

#include "sidebench/augment.hpp"
#include "sidebench/boundary.hpp"
#include "sidebench/dde.hpp"
#include "sidebench/metrics_standard.hpp"
#include "sidebench/planarity.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace sidebench {

inline constexpr const char* kToolName = "sidebench";
inline constexpr const char* kToolVersion = "0.1.0";

struct SceneRecord {
  std::string scene;
  std::optional<std::string> error;  // set when the scene failed as a whole
  std::vector<std::string> flags;    // skipped or degraded metrics
  long valid_pixels = 0;
  double scale = 1.0;  // median scale used by planarity and DDE
  std::optional<GlobalMetrics> global;
  std::optional<BinnedErrors> binned;
  std::vector<PlanarityResult> planarity;
  std::optional<DbeResult> dbe;
  std::optional<DdeResult> dde;

  bool ok() const { return !error.has_value(); }
};

/// Unweighted means over the scenes (or planar instances) that carry each
/// metric; absent when no scene does.
struct AggregateBlock {
  long scene_count = 0;
  long failed_scenes = 0;
  std::optional<double> rel, srel, rms, log_rms, delta1, delta2, delta3;
  std::optional<double> dbe_acc, dbe_comp;
  std::optional<double> dde0, dde_minus, dde_plus;
  std::optional<PlanarityAggregate> planarity;
};

struct MetricReport {
  std::vector<SceneRecord> scenes;  // sorted by scene id
  AggregateBlock aggregate;
  MetricConfig config;
  std::string tool_version = kToolVersion;
};

AggregateBlock aggregate(const std::vector<SceneRecord>& scenes);

/// Pixel inputs of one scene; optional members skip only dependent metrics.
struct SceneInputs {
  std::string scene;
  DepthMap gt;
  DepthMap pred;
  std::optional<Mask> invalid;
  std::optional<Mask> transparent;
  std::vector<SemanticMask> planes;
  std::optional<EdgeMap> gt_edges;
  std::optional<EdgeMap> pred_edges;
};

/// Every metric for one scene; never throws for metric-level failures,
/// which are recorded as flags instead.
SceneRecord evaluate_scene(const SceneInputs& in, const MetricConfig& cfg);

/// Reads one scene from the dataset layout. Throws for missing or unreadable
/// required files and for dimension mismatches.
SceneInputs load_scene(const std::filesystem::path& dataset_dir, const std::filesystem::path& pred_dir,
                       const std::string& scene, const MetricConfig& cfg);

/// Scene ids in dataset_dir/depth, sorted.
std::vector<std::string> list_scenes(const std::filesystem::path& dataset_dir);

/// Effective configuration: defaults, then dataset_dir/sidebench.cfg when
/// present, then config_path.
MetricConfig resolve_config(const std::filesystem::path& dataset_dir,
                            const std::optional<std::filesystem::path>& config_path);

/// Evaluates every scene, concurrently when threads > 1 (0 = hardware
/// concurrency capped by SIDEBENCH_THREADS). Output order is by scene id.
MetricReport run_evaluation(const std::filesystem::path& dataset_dir, const std::filesystem::path& pred_dir,
                            const std::optional<std::filesystem::path>& config_path, unsigned threads = 0);

/// Thread count from SIDEBENCH_THREADS, else hardware concurrency.
unsigned default_thread_count();

nlohmann::json to_json(const MetricReport& report);
MetricReport report_from_json(const nlohmann::json& j);

std::string report_json_text(const MetricReport& report);
std::string summary_csv(const MetricReport& report);
std::string errorband_csv(const MetricReport& report);

inline constexpr const char* kSummaryColumns[] = {
    "scene", "rel", "log10", "rms", "sigma1", "sigma2", "sigma3", "pe_plan", "pe_orie",
    "dbe_acc", "dbe_comp", "dde_0", "dde_minus", "dde_plus"};

/// Writes report.json, summary.csv and errorband.csv into out_dir.
void emit(const MetricReport& report, const std::filesystem::path& out_dir);

/// Writes one augmented copy of the dataset per preset step under
/// out_dir/<tag>/: rgb/ augmented, depth/, edges/ and masks/ paired-transformed.
std::vector<std::filesystem::path> augment_dataset(const std::filesystem::path& dataset_dir,
                                                   const std::string& preset, std::uint64_t seed,
                                                   const std::filesystem::path& out_dir);

}  // namespace sidebench
