#include "zgf/landscape.hpp"

#include <algorithm>
#include <stdexcept>

namespace zgf {

LandscapeVector landscape(const std::vector<PersistenceInterval>& bars, int L, int R, int K) {
  if (R < 2) throw std::invalid_argument("landscape: R must be >= 2");
  if (K < 1) throw std::invalid_argument("landscape: K must be >= 1");
  if (L < 1) throw std::invalid_argument("landscape: L must be >= 1");
  for (const auto& b : bars)
    if (!(0 <= b.birth && b.birth <= b.death && b.death <= L - 1))
      throw std::invalid_argument("landscape: bar outside [0, L-1]");

  LandscapeVector out;
  out.K = K;
  out.R = R;
  out.values.assign(std::size_t(K) * R, 0.0);
  std::vector<double> tents;
  tents.reserve(bars.size());
  for (int s = 0; s < R; ++s) {
    double t = double(L - 1) * double(s) / double(R - 1);
    tents.clear();
    for (const auto& b : bars) {
      double v = std::min(t - double(b.birth), double(b.death) - t);
      if (v > 0.0) tents.push_back(v);
    }
    std::sort(tents.begin(), tents.end(), std::greater<double>());
    for (int k = 0; k < K && k < int(tents.size()); ++k)
      out.values[std::size_t(k) * R + s] = tents[std::size_t(k)];
  }
  return out;
}

Descriptor assemble_descriptor(const std::vector<LandscapeVector>& per_plane, int Z) {
  if (int(per_plane.size()) != Z)
    throw std::invalid_argument("assemble_descriptor: expected " + std::to_string(Z) +
                                " planes, got " + std::to_string(per_plane.size()));
  Descriptor d;
  for (const auto& lv : per_plane) {
    if (lv.K != per_plane[0].K || lv.R != per_plane[0].R)
      throw std::invalid_argument("assemble_descriptor: mismatched landscape shapes");
    d.vector.insert(d.vector.end(), lv.values.begin(), lv.values.end());
  }
  return d;
}

}  // namespace zgf
