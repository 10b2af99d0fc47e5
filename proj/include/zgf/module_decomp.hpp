#pragma once

#include <utility>
#include <vector>

#include "zgf/f2.hpp"

namespace zgf {

/// One arrow of a zigzag of finite-dimensional F2 vector spaces.
/// forward: map V_i -> V_{i+1}, one column per basis vector of V_i.
/// backward: map V_{i+1} -> V_i, one column per basis vector of V_{i+1}.
struct ModuleArrow {
  bool forward = true;
  std::vector<Bitvec> columns;
};

/// Interval decomposition of a zigzag module given by explicit matrices.
/// Returns (birth, death) pairs, death inclusive, over positions 0..dims.size()-1.
std::vector<std::pair<int, int>> decompose_zigzag_module(const std::vector<int>& dims,
                                                         const std::vector<ModuleArrow>& arrows);

}  // namespace zgf
