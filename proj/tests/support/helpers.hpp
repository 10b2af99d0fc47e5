#pragma once

#include <string>
#include <vector>

#include "zgf/complex.hpp"
#include "zgf/rng.hpp"

namespace zgf::testing {

/// Mask from rows of '.' (inactive) and '#' (active).
inline BitMask mask_of(const std::vector<std::string>& rows) {
  BitMask m(int(rows.size()));
  for (int r = 0; r < m.n; ++r)
    for (int c = 0; c < m.n; ++c) m.set(r, c, rows[std::size_t(r)][std::size_t(c)] == '#');
  return m;
}

inline BitMask random_mask(int n, double p, Rng& rng) {
  BitMask m(n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m.set(r, c, rng.uniform() < p);
  return m;
}

inline SimplicialComplex complex_of(const BitMask& m) {
  return closure_adapter(cubical_cells(m));
}

/// 3x3 ring: all border pixels active, center inactive.
inline BitMask ring3() { return mask_of({"###", "#.#", "###"}); }

inline BitMask full3() { return mask_of({"###", "###", "###"}); }

}  // namespace zgf::testing
