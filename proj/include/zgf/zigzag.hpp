#pragma once

#include <utility>
#include <vector>

#include "zgf/complex.hpp"

namespace zgf {

/// Closed interval on layer indices; death is the last layer the class is alive.
struct PersistenceInterval {
  int dim = 0;
  int birth = 0;
  int death = 0;

  bool operator==(const PersistenceInterval& o) const {
    return dim == o.dim && birth == o.birth && death == o.death;
  }
  bool operator<(const PersistenceInterval& o) const {
    if (dim != o.dim) return dim < o.dim;
    if (birth != o.birth) return birth < o.birth;
    return death < o.death;
  }
};

/// Interleaved intersection sequence: layer 2t = frame t, layer 2t+1 the
/// intersection of frames t and t+1. Length L = 2T-1.
struct ZigzagSequence {
  std::vector<SimplicialComplex> layers;
};

/// Per-simplex sorted toggle lists; a simplex is a member of layer l iff an
/// odd number of its toggles are <= l.
struct ToggleFiltration {
  struct Entry {
    Simplex simplex;
    std::vector<int> toggles;  // strictly increasing, values in 0..num_layers
  };
  int num_layers = 0;
  std::vector<Entry> entries;
};

ZigzagSequence build_sequence(const std::vector<SimplicialComplex>& frames);

ToggleFiltration encode(const ZigzagSequence& seq);

/// Reconstruct per-layer complexes from a toggle filtration.
std::vector<SimplicialComplex> decode_layers(const ToggleFiltration& f);

/// Zigzag persistent homology (dims 0 and 1) over F2. Reference engine:
/// layer-wise homology plus interval decomposition of the induced module.
std::vector<PersistenceInterval> compute_zigzag(const ToggleFiltration& f);

std::vector<PersistenceInterval> select_dimension(const std::vector<PersistenceInterval>& bars,
                                                  int k);

/// CSV dump, columns dim,birth,death, sorted by (dim, birth, death).
std::string barcode_csv(std::vector<PersistenceInterval> bars);

}  // namespace zgf
