#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "zgf/eval.hpp"
#include "zgf/grid.hpp"
#include "zgf/landscape.hpp"

namespace zgf {

/// Error categories the CLI maps to distinct exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;  // exit 2
};
struct DatasetError : std::runtime_error {
  using std::runtime_error::runtime_error;  // exit 3
};
struct SelectionError : std::runtime_error {
  using std::runtime_error::runtime_error;  // exit 4
};
struct OutputExistsError : std::runtime_error {
  using std::runtime_error::runtime_error;  // exit 5
};

enum class Engine { grid, reference };

struct RunConfig {
  std::filesystem::path dataset_root;
  std::filesystem::path output_dir;

  int n_grid = 50;  // synth / rasterization resolution
  double threshold = 0.0;
  int R = 50;
  int K = 5;
  int Z = 10;
  NormalizeOrder order = NormalizeOrder::appendix;
  Engine engine = Engine::grid;

  ControlSpec control;

  // Evaluation parameters.
  int runs = 20;
  int per_class = 10;
  int splits = 5;
  double test_frac = 0.2;
  double l2 = 1.0;
  std::uint64_t seed = 0;
  std::string cluster_mouse;       // protocol filters; empty = first available
  std::string cluster_video_type;

  // Synthetic dataset shape.
  int synth_classes = 3;
  int synth_repeats = 10;
  int synth_T = 40;
  double synth_noise = 0.25;

  int workers = 1;
};

std::string config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

/// ZGF_WORKERS overrides the configured worker count when set.
int effective_workers(int configured);

/// Per-frame superlevel masks of a normalized field.
std::vector<BitMask> field_masks(const NormalizedField& field, double threshold);

/// One plane end to end: normalize -> control -> masks -> zigzag H1 ->
/// landscape over [0, 2T-2]. The control spec here carries the final derived
/// seed (already mixed per video / per plane by the batch driver).
LandscapeVector plane_landscape(const ActivityGrid& grid, const RunConfig& cfg,
                                const ControlSpec& derived_control);

struct DescriptorRun {
  std::vector<Descriptor> descriptors;  // assembled trials, sorted (mouse, video)
  std::vector<std::string> warnings;    // skipped planes / omitted trials
  double total_seconds = 0.0;
  std::vector<double> plane_seconds;    // one entry per completed plane job
};

/// Batch over every (trial, plane) job in the dataset; parallel over jobs when
/// workers > 1. Writes per-plane and per-trial descriptor files, pooled CSV,
/// the config used, a report, and timings under cfg.output_dir.
DescriptorRun run_descriptors(const RunConfig& cfg);

/// Protocol drivers over a previously written descriptor store.
ClusterReport run_cluster(const RunConfig& cfg);
ClassifyReport run_classify(const RunConfig& cfg, ClassifyTarget target);

/// Write a synthetic dataset per the config's synth_* fields.
void run_synth(const RunConfig& cfg, bool force);

/// Landscape line plots from the descriptor store.
void run_plot(const RunConfig& cfg);

}  // namespace zgf
