#pragma once

#include <vector>

#include "zgf/complex.hpp"
#include "zgf/zigzag.hpp"

namespace zgf {

/// Interleaved layer masks for a sequence of per-frame masks: layer 2t is
/// frame t, layer 2t+1 the pixel-wise AND of frames t and t+1. Intersecting
/// the closure complexes of two masks equals the closure complex of the
/// AND-ed mask, so the whole sequence stays mask-determined.
std::vector<BitMask> interleave_masks(const std::vector<BitMask>& frames);

/// Zigzag persistence (dims 0 and 1) of the closure-complex sequence of the
/// given layer masks. Grid-specialized engine: components via union-find on
/// active pixels, loops via bounded complement regions on the dual grid.
/// Output matches compute_zigzag on the encoded simplicial sequence.
std::vector<PersistenceInterval> compute_zigzag_masks(const std::vector<BitMask>& layer_masks);

/// Full pipeline step for one plane: frames -> interleaved layers -> barcode.
std::vector<PersistenceInterval> compute_zigzag_frames(const std::vector<BitMask>& frames);

}  // namespace zgf
