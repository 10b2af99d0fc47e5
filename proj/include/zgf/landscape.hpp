#pragma once

#include <string>
#include <vector>

#include "zgf/zigzag.hpp"

namespace zgf {

/// Persistence landscape samples: K layers by R sample points over the layer
/// index domain [0, L-1], flattened row-major (all samples of layer 1 first).
struct LandscapeVector {
  int K = 0;
  int R = 0;
  std::vector<double> values;  // K*R, non-negative, rows pointwise non-increasing
};

/// Per-trial descriptor: concatenation of Z per-plane landscape vectors in
/// ascending plane order.
struct Descriptor {
  std::string mouse_id;
  std::string video_id;
  std::string video_type;
  std::vector<double> vector;
};

/// lambda_k(t) = k-th largest tent value max(0, min(t-b, d-t)) over bars,
/// sampled at R uniform points of [0, L-1].
LandscapeVector landscape(const std::vector<PersistenceInterval>& bars, int L, int R = 50,
                          int K = 5);

Descriptor assemble_descriptor(const std::vector<LandscapeVector>& per_plane, int Z = 10);

}  // namespace zgf
