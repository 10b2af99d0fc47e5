#pragma once

#include <vector>

#include "zgf/grid.hpp"

namespace zgf {

enum class InterpMethod { nearest, linear, cubic };

/// Rasterize scattered neuron samples onto a regular n_grid x n_grid grid over
/// [0,1]^2, one interpolation per frame. linear is barycentric interpolation on
/// a Delaunay triangulation (exact for affine fields); cubic additionally uses
/// least-squares vertex gradients for a piecewise-cubic Bezier interpolant.
/// Grid points outside the convex hull get the per-frame sample mean, so they
/// normalize to zero and never activate.
ActivityGrid rasterize(const std::vector<NeuronSample>& samples, int n_grid,
                       InterpMethod method = InterpMethod::linear);

}  // namespace zgf
