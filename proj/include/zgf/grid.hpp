#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zgf {

/// Scattered input: one neuron's position (normalized imaging coordinates in
/// [0,1]^2) and its per-frame fluorescence trace.
struct NeuronSample {
  int neuron_id = 0;
  double x = 0.0;
  double y = 0.0;
  std::vector<double> trace;
};

/// Raw per-trial activity tensor on an n x n grid over T frames.
/// Storage is (row, col, frame) with frame varying fastest.
struct ActivityGrid {
  int n = 0;
  int T = 0;
  std::vector<float> values;

  std::string mouse_id;
  int plane_id = 0;
  std::string video_id;
  std::string video_type;

  ActivityGrid() = default;
  ActivityGrid(int n_grid, int frames)
      : n(n_grid), T(frames), values(std::size_t(n_grid) * n_grid * frames, 0.0f) {}

  std::size_t idx(int row, int col, int t) const {
    return (std::size_t(row) * n + col) * T + t;
  }
  float at(int row, int col, int t) const { return values[idx(row, col, t)]; }
  float& at(int row, int col, int t) { return values[idx(row, col, t)]; }
};

/// Dimensionless normalized field delta; same layout as ActivityGrid.
struct NormalizedField {
  int n = 0;
  int T = 0;
  std::vector<double> values;

  NormalizedField() = default;
  NormalizedField(int n_grid, int frames)
      : n(n_grid), T(frames), values(std::size_t(n_grid) * n_grid * frames, 0.0) {}

  std::size_t idx(int row, int col, int t) const {
    return (std::size_t(row) * n + col) * T + t;
  }
  double at(int row, int col, int t) const { return values[idx(row, col, t)]; }
  double& at(int row, int col, int t) { return values[idx(row, col, t)]; }

  /// Pixel values of one frame, row-major (the complex builder's input).
  std::vector<double> frame(int t) const;
};

enum class ControlKind { none, frame_shuffle, grid_scramble };

struct ControlSpec {
  ControlKind kind = ControlKind::none;
  std::uint64_t seed = 0;
};

enum class NormalizeOrder { appendix, maintext };

inline constexpr double kNormEpsilon = 1e-9;

/// Per-pixel normalization delta = (r - mean)/mean over frames; pixels whose
/// temporal mean is below the epsilon guard are forced to zero (never active).
/// maintext order assumes the grid already holds per-neuron-normalized values
/// (normalization happened before gridding) and passes them through.
NormalizedField normalize(const ActivityGrid& grid,
                          NormalizeOrder order = NormalizeOrder::appendix);

/// In-place per-neuron trace normalization for the maintext order.
void normalize_traces(std::vector<NeuronSample>& samples);

/// frame_shuffle permutes frames (one permutation from the seed, shared across
/// planes when the caller derives the seed per video); grid_scramble permutes
/// pixel indices, fixed across frames.
NormalizedField apply_control(const NormalizedField& field, const ControlSpec& spec);

}  // namespace zgf
