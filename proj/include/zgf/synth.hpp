#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "zgf/grid.hpp"

namespace zgf {

/// One synthetic class: a travelling annulus with per-frame center, radii and
/// an on/off schedule, plus i.i.d. Gaussian pixel noise. All schedules have
/// length T.
struct SynthClassSpec {
  std::string name;
  std::string video_type = "nat";
  int n_grid = 30;
  int T = 40;
  int Z = 2;  // planes per trial

  std::vector<double> center_row;  // annulus center trajectory
  std::vector<double> center_col;
  std::vector<double> r_inner;  // radius schedules
  std::vector<double> r_outer;
  std::vector<std::uint8_t> on;  // 1 where the annulus is present

  double amplitude = 3.0;
  double baseline = 1.0;
  double noise_sigma = 0.0;
};

/// Constant-radius annulus at a fixed or drifting center with a periodic
/// schedule: on for `on_frames`, off for `off_frames`, starting at `phase`.
SynthClassSpec make_ring_class(const std::string& name, int n_grid, int T, int Z,
                               double row0, double col0, double drow, double dcol,
                               double rin, double rout, int on_frames, int off_frames,
                               int phase, double noise_sigma);

/// One trial: one ActivityGrid per plane, deterministic in (spec, seed).
/// Annulus pixels carry `amplitude`, everything else `baseline`, both plus
/// N(0, sigma) noise. Throws if an on-frame annulus leaves the grid.
std::vector<ActivityGrid> gen_trial(const SynthClassSpec& spec, std::uint64_t seed);

/// Materialize a labeled dataset in the on-disk ingest layout under `root`:
/// <root>/<mouse>/<plane>/<video>.zgf plus <root>/<mouse>/meta.json. Each class
/// becomes one video (one repeat group); repeats differ only by noise seed.
/// Requires >= 2 classes with matching n_grid/T/Z.
void gen_dataset(const std::vector<SynthClassSpec>& classes, int repeats, std::uint64_t seed,
                 const std::filesystem::path& root, const std::string& mouse = "m0");

}  // namespace zgf
