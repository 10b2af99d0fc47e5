#include "zgf/zigzag_grid.hpp"

#include <algorithm>
#include <stdexcept>

#include "zgf/module_decomp.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace zgf {

namespace {

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    for (int i = 0; i < n; ++i) parent[i] = i;
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a < b) std::swap(a, b);  // keep smallest id as root, deterministic
    parent[a] = b;
  }
};

/// Per-layer summary: connected components of active pixels (H0 basis) and
/// bounded complement regions on the dual cell grid (H1 basis).
struct MaskLayer {
  int n = 0;
  UnionFind pixels;
  UnionFind cells;  // (n-1)^2 dual cells + one outer node at the end
  std::vector<int> comp_index;  // pixel root -> H0 basis index (-1 otherwise)
  std::vector<int> comp_rep;    // H0 basis index -> representative pixel
  std::vector<int> hole_index;  // cell root -> H1 basis index (-1 otherwise)
  std::vector<int> hole_rep;    // H1 basis index -> representative cell

  explicit MaskLayer(const BitMask& m)
      : n(m.n), pixels(m.n * m.n), cells((m.n - 1) * (m.n - 1) + 1) {
    const int n = m.n;
    auto pid = [n](int r, int c) { return r * n + c; };
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (!m.at(r, c)) continue;
        if (c + 1 < n && m.at(r, c + 1)) pixels.unite(pid(r, c), pid(r, c + 1));
        if (r + 1 < n && m.at(r + 1, c)) pixels.unite(pid(r, c), pid(r + 1, c));
      }
    comp_index.assign(n * n, -1);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        if (!m.at(r, c)) continue;
        int root = pixels.find(pid(r, c));
        if (comp_index[root] < 0) {
          comp_index[root] = int(comp_rep.size());
          comp_rep.push_back(root);
        }
      }

    // Dual grid: a cell is solid iff all four corners are active. Complement
    // cells communicate across a shared grid edge iff that edge is absent;
    // border cells reach the unbounded outside through absent border edges.
    const int nc = n - 1;
    const int outer = nc * nc;
    auto cid = [nc](int r, int c) { return r * nc + c; };
    auto edge_present = [&m](int r1, int c1, int r2, int c2) {
      return m.at(r1, c1) && m.at(r2, c2);
    };
    std::vector<std::uint8_t> solid(std::size_t(std::max(nc * nc, 0)), 0);
    for (int r = 0; r < nc; ++r)
      for (int c = 0; c < nc; ++c)
        solid[cid(r, c)] =
            (m.at(r, c) && m.at(r, c + 1) && m.at(r + 1, c) && m.at(r + 1, c + 1)) ? 1 : 0;
    for (int r = 0; r < nc; ++r)
      for (int c = 0; c < nc; ++c) {
        if (solid[cid(r, c)]) continue;
        if (c + 1 < nc && !solid[cid(r, c + 1)] && !edge_present(r, c + 1, r + 1, c + 1))
          cells.unite(cid(r, c), cid(r, c + 1));
        if (r + 1 < nc && !solid[cid(r + 1, c)] && !edge_present(r + 1, c, r + 1, c + 1))
          cells.unite(cid(r, c), cid(r + 1, c));
        if (r == 0 && !edge_present(0, c, 0, c + 1)) cells.unite(cid(r, c), outer);
        if (r == nc - 1 && !edge_present(n - 1, c, n - 1, c + 1)) cells.unite(cid(r, c), outer);
        if (c == 0 && !edge_present(r, 0, r + 1, 0)) cells.unite(cid(r, c), outer);
        if (c == nc - 1 && !edge_present(r, n - 1, r + 1, n - 1)) cells.unite(cid(r, c), outer);
      }
    hole_index.assign(nc * nc + 1, -1);
    const int outer_root = cells.find(outer);
    for (int r = 0; r < nc; ++r)
      for (int c = 0; c < nc; ++c) {
        if (solid[cid(r, c)]) continue;
        int root = cells.find(cid(r, c));
        if (root == outer_root) continue;
        if (hole_index[root] < 0) {
          hole_index[root] = int(hole_rep.size());
          hole_rep.push_back(root);
        }
      }
  }
};

// H0 inclusion map small -> large: each component lands in the component of
// the large layer containing its representative pixel.
std::vector<Bitvec> h0_matrix(MaskLayer& small, MaskLayer& large) {
  std::vector<Bitvec> cols(small.comp_rep.size(), Bitvec(large.comp_rep.size()));
  for (std::size_t j = 0; j < small.comp_rep.size(); ++j) {
    int idx = large.comp_index[large.pixels.find(small.comp_rep[j])];
    cols[j].set(std::size_t(idx));
  }
  return cols;
}

// H1 inclusion map small -> large: the loop around a hole of the small layer
// maps to the sum of the large-layer holes contained in its region.
std::vector<Bitvec> h1_matrix(MaskLayer& small, MaskLayer& large) {
  std::vector<Bitvec> cols(small.hole_rep.size(), Bitvec(large.hole_rep.size()));
  for (std::size_t h = 0; h < large.hole_rep.size(); ++h) {
    int small_root = small.cells.find(large.hole_rep[h]);
    int j = small.hole_index[small_root];
    if (j >= 0) cols[std::size_t(j)].set(h);
  }
  return cols;
}

}  // namespace

std::vector<BitMask> interleave_masks(const std::vector<BitMask>& frames) {
  if (frames.size() < 2) throw std::invalid_argument("interleave_masks: need at least 2 frames");
  std::vector<BitMask> layers;
  layers.reserve(2 * frames.size() - 1);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (frames[t].n != frames[0].n)
      throw std::invalid_argument("interleave_masks: inconsistent grid sizes");
    layers.push_back(frames[t]);
    if (t + 1 < frames.size()) {
      BitMask mid(frames[t].n);
      for (std::size_t i = 0; i < mid.active.size(); ++i)
        mid.active[i] = frames[t].active[i] & frames[t + 1].active[i];
      layers.push_back(mid);
    }
  }
  return layers;
}

std::vector<PersistenceInterval> compute_zigzag_masks(const std::vector<BitMask>& layer_masks) {
  if (layer_masks.empty()) return {};
  for (std::size_t l = 0; l + 1 < layer_masks.size(); ++l) {
    const BitMask& a = layer_masks[l];
    const BitMask& b = layer_masks[l + 1];
    const BitMask& sub = (l % 2 == 0) ? b : a;  // odd layers nest inside even ones
    const BitMask& sup = (l % 2 == 0) ? a : b;
    for (std::size_t i = 0; i < sub.active.size(); ++i)
      if (sub.active[i] && !sup.active[i])
        throw std::invalid_argument("compute_zigzag_masks: layers are not interleaved inclusions");
  }

  std::vector<MaskLayer> layers;
  layers.reserve(layer_masks.size());
  for (const auto& m : layer_masks) layers.emplace_back(m);

  std::vector<PersistenceInterval> out;
  for (int k = 0; k <= 1; ++k) {
    std::vector<int> dims;
    std::vector<ModuleArrow> arrows;
    for (auto& l : layers)
      dims.push_back(k == 0 ? int(l.comp_rep.size()) : int(l.hole_rep.size()));
    for (std::size_t p = 0; p + 1 < layers.size(); ++p) {
      ModuleArrow arr;
      MaskLayer& small = (p % 2 == 0) ? layers[p + 1] : layers[p];
      MaskLayer& large = (p % 2 == 0) ? layers[p] : layers[p + 1];
      arr.forward = (p % 2 == 1);
      arr.columns = k == 0 ? h0_matrix(small, large) : h1_matrix(small, large);
      arrows.push_back(std::move(arr));
    }
    for (auto [b, d] : decompose_zigzag_module(dims, arrows)) out.push_back({k, b, d});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PersistenceInterval> compute_zigzag_frames(const std::vector<BitMask>& frames) {
  return compute_zigzag_masks(interleave_masks(frames));
}

}  // namespace zgf
