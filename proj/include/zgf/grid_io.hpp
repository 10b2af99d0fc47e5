#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "zgf/grid.hpp"

namespace zgf {

/// Binary grid format: magic "ZGF1", three little-endian u32 (n, n, T), then
/// n*n*T little-endian f32 in (row, col, frame) order, frame varying fastest.
void store_grid(const ActivityGrid& grid, const std::filesystem::path& path);
ActivityGrid load_grid(const std::filesystem::path& path);

/// CSV variant: T rows, each with n*n comma-separated values in row-major
/// pixel order.
void store_grid_csv(const ActivityGrid& grid, const std::filesystem::path& path);
ActivityGrid load_grid_csv(const std::filesystem::path& path);

/// Scattered-sample CSV with header neuron_id,x,y,f0,...,f{T-1}.
std::vector<NeuronSample> load_samples_csv(const std::filesystem::path& path);
void store_samples_csv(const std::vector<NeuronSample>& samples,
                       const std::filesystem::path& path);

struct VideoMeta {
  std::string video_type;
  int repeat_group = 0;
};

/// Per-mouse metadata: video_id -> type and repeat-group id.
using MouseMeta = std::map<std::string, VideoMeta>;

void store_meta(const MouseMeta& meta, const std::filesystem::path& path);
MouseMeta load_meta(const std::filesystem::path& path);

/// Dataset layout: <root>/<mouse>/<plane>/<video>.zgf + <root>/<mouse>/meta.json
struct TrialRef {
  std::string mouse_id;
  std::string video_id;
  std::string video_type;
  int repeat_group = 0;
  std::vector<int> planes;  // plane ids with a grid file present, ascending
};

std::filesystem::path grid_path(const std::filesystem::path& root, const std::string& mouse,
                                int plane, const std::string& video);

/// Scan a dataset root; returns trials sorted by (mouse, video).
std::vector<TrialRef> scan_dataset(const std::filesystem::path& root);

}  // namespace zgf
