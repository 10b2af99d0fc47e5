#include "zgf/zigzag.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "zgf/f2.hpp"
#include "zgf/module_decomp.hpp"

namespace zgf {

ZigzagSequence build_sequence(const std::vector<SimplicialComplex>& frames) {
  if (frames.size() < 2) throw std::invalid_argument("build_sequence: need at least 2 frames");
  ZigzagSequence seq;
  seq.layers.reserve(2 * frames.size() - 1);
  for (std::size_t t = 0; t < frames.size(); ++t) {
    seq.layers.push_back(frames[t]);
    if (t + 1 < frames.size()) seq.layers.push_back(intersect(frames[t], frames[t + 1]));
  }
  return seq;
}

ToggleFiltration encode(const ZigzagSequence& seq) {
  const int L = int(seq.layers.size());
  for (const auto& layer : seq.layers)
    if (!layer.is_face_closed()) throw std::invalid_argument("encode: layer not face-closed");

  // Membership runs per simplex across layers.
  std::map<Simplex, std::vector<int>> toggles;
  for (int l = 0; l < L; ++l) {
    for (const auto& s : seq.layers[l].simplices) {
      auto& t = toggles[s];
      if (t.size() % 2 == 0) t.push_back(l);  // was absent, run starts
    }
    for (auto& [s, t] : toggles) {
      if (t.size() % 2 == 1 && !seq.layers[l].contains(s)) t.push_back(l);  // run ends
    }
  }
  ToggleFiltration f;
  f.num_layers = L;
  for (auto& [s, t] : toggles) {
    // Keep open runs open-ended at L.
    f.entries.push_back({s, std::move(t)});
  }
  // A run alive at the last layer closes at L.
  for (auto& e : f.entries)
    if (e.toggles.size() % 2 == 1) e.toggles.push_back(L);
  return f;
}

std::vector<SimplicialComplex> decode_layers(const ToggleFiltration& f) {
  std::vector<SimplicialComplex> layers(std::size_t(std::max(f.num_layers, 0)));
  for (const auto& e : f.entries) {
    for (std::size_t i = 0; i + 1 < e.toggles.size(); i += 2) {
      for (int l = e.toggles[i]; l < std::min(e.toggles[i + 1], f.num_layers); ++l)
        layers[l].simplices.push_back(e.simplex);
    }
    if (e.toggles.size() % 2 == 1) {
      for (int l = e.toggles.back(); l < f.num_layers; ++l)
        layers[l].simplices.push_back(e.simplex);
    }
  }
  for (auto& layer : layers) layer.normalize();
  return layers;
}

namespace {

// (dim, lex) order so every face precedes its cofaces.
bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.nverts != b.nverts) return a.nverts < b.nverts;
  return a < b;
}

/// Boundary-matrix reduction of a single complex with full column tracking.
/// Provides homology generators (dims 0..2) and reduction of arbitrary cycles
/// to homology coordinates.
struct LayerHomology {
  std::vector<Simplex> simplices;  // sorted by (dim, lex)
  std::vector<Bitvec> reduced;     // R columns
  std::vector<Bitvec> chains;      // U columns (only kept for zero R columns)
  std::vector<long> pivot_col;     // pivot row -> column index, -1 if none
  std::vector<std::vector<long>> basis;  // per dim: essential column indices
  std::vector<long> basis_index;         // column -> index within its dim basis, -1

  explicit LayerHomology(const SimplicialComplex& c) {
    simplices = c.simplices;
    std::sort(simplices.begin(), simplices.end(), filtration_less);
    const std::size_t m = simplices.size();
    reduced.assign(m, Bitvec(m));
    chains.assign(m, Bitvec(m));
    pivot_col.assign(m, -1);
    basis_index.assign(m, -1);
    basis.assign(3, {});
    for (std::size_t j = 0; j < m; ++j) {
      Bitvec col(m);
      for (const auto& face : simplices[j].facets()) col.set(index_of(face));
      Bitvec u(m);
      u.set(j);
      long p;
      while ((p = col.pivot()) >= 0 && pivot_col[p] >= 0) {
        col ^= reduced[pivot_col[p]];
        u ^= chains[pivot_col[p]];
      }
      if (p >= 0) pivot_col[p] = long(j);
      reduced[j] = std::move(col);
      chains[j] = std::move(u);
    }
    for (std::size_t j = 0; j < m; ++j) {
      if (reduced[j].none() && pivot_col[j] < 0) {
        int d = simplices[j].dim();
        basis_index[j] = long(basis[d].size());
        basis[d].push_back(long(j));
      }
    }
  }

  std::size_t index_of(const Simplex& s) const {
    auto it = std::lower_bound(simplices.begin(), simplices.end(), s, filtration_less);
    if (it == simplices.end() || !(*it == s))
      throw std::logic_error("LayerHomology: simplex not found");
    return std::size_t(it - simplices.begin());
  }

  int betti(int k) const { return int(basis[k].size()); }

  /// Homology coordinates of a cycle given as a chain over this complex.
  Bitvec homology_class(Bitvec z, int k) const {
    Bitvec coeff(basis[k].size());
    long p;
    while ((p = z.pivot()) >= 0) {
      if (pivot_col[p] >= 0 && reduced[pivot_col[p]].pivot() == p) {
        z ^= reduced[pivot_col[p]];
      } else if (basis_index[p] >= 0) {
        coeff.flip(std::size_t(basis_index[p]));
        z ^= chains[p];
      } else {
        throw std::logic_error("homology_class: chain is not a cycle");
      }
    }
    return coeff;
  }
};

// Map H_k(small) -> H_k(large) induced by inclusion, as columns over large's basis.
std::vector<Bitvec> inclusion_matrix(const LayerHomology& small, const LayerHomology& large,
                                     int k) {
  std::vector<Bitvec> cols;
  cols.reserve(small.basis[k].size());
  for (long j : small.basis[k]) {
    Bitvec z(large.simplices.size());
    for (std::size_t b = 0; b < small.simplices.size(); ++b)
      if (small.chains[j].test(b)) z.flip(large.index_of(small.simplices[b]));
    cols.push_back(large.homology_class(std::move(z), k));
  }
  return cols;
}

}  // namespace

std::vector<PersistenceInterval> compute_zigzag(const ToggleFiltration& f) {
  auto layers = decode_layers(f);
  if (layers.empty()) return {};
  for (const auto& layer : layers)
    if (!layer.is_face_closed())
      throw std::invalid_argument("compute_zigzag: layer violates face closure");

  // Internal positions: original layer i at 2i, the intersection of adjacent
  // layers between them. Arrows point from each intersection into both sides.
  const std::size_t L = layers.size();
  std::vector<SimplicialComplex> internal;
  internal.reserve(2 * L - 1);
  for (std::size_t i = 0; i < L; ++i) {
    internal.push_back(layers[i]);
    if (i + 1 < L) internal.push_back(intersect(layers[i], layers[i + 1]));
  }

  std::vector<LayerHomology> hom;
  hom.reserve(internal.size());
  for (const auto& c : internal) hom.emplace_back(c);

  std::vector<PersistenceInterval> out;
  for (int k = 0; k <= 1; ++k) {
    std::vector<int> dims;
    std::vector<ModuleArrow> arrows;
    for (std::size_t p = 0; p < internal.size(); ++p) dims.push_back(hom[p].betti(k));
    for (std::size_t p = 0; p + 1 < internal.size(); ++p) {
      ModuleArrow arr;
      if (p % 2 == 0) {
        // even -> odd: backward inclusion (intersection into the left layer)
        arr.forward = false;
        arr.columns = inclusion_matrix(hom[p + 1], hom[p], k);
      } else {
        arr.forward = true;
        arr.columns = inclusion_matrix(hom[p], hom[p + 1], k);
      }
      arrows.push_back(std::move(arr));
    }
    for (auto [b, d] : decompose_zigzag_module(dims, arrows)) {
      int ob = (b + 1) / 2;
      int od = d / 2;
      if (ob <= od) out.push_back({k, ob, od});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PersistenceInterval> select_dimension(const std::vector<PersistenceInterval>& bars,
                                                  int k) {
  std::vector<PersistenceInterval> out;
  for (const auto& b : bars)
    if (b.dim == k) out.push_back(b);
  return out;
}

std::string barcode_csv(std::vector<PersistenceInterval> bars) {
  std::sort(bars.begin(), bars.end());
  std::ostringstream os;
  os << "dim,birth,death\n";
  for (const auto& b : bars) os << b.dim << ',' << b.birth << ',' << b.death << '\n';
  return os.str();
}

}  // namespace zgf
