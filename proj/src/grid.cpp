#include "zgf/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "zgf/rng.hpp"

namespace zgf {

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1, u2;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 6.283185307179586476925286766559 * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::vector<std::uint32_t> make_permutation(std::size_t n, std::uint64_t seed) {
  std::vector<std::uint32_t> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = std::uint32_t(i);
  Rng rng(seed);
  rng.shuffle(p);
  return p;
}

std::vector<double> NormalizedField::frame(int t) const {
  std::vector<double> out(std::size_t(n) * n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) out[std::size_t(r) * n + c] = at(r, c, t);
  return out;
}

NormalizedField normalize(const ActivityGrid& grid, NormalizeOrder order) {
  for (float v : grid.values)
    if (!std::isfinite(v)) throw std::invalid_argument("normalize: non-finite grid value");
  NormalizedField out(grid.n, grid.T);
  if (order == NormalizeOrder::maintext) {
    for (std::size_t i = 0; i < grid.values.size(); ++i) out.values[i] = grid.values[i];
    return out;
  }
  for (int r = 0; r < grid.n; ++r)
    for (int c = 0; c < grid.n; ++c) {
      double mean = 0.0;
      for (int t = 0; t < grid.T; ++t) mean += grid.at(r, c, t);
      mean /= grid.T;
      if (std::fabs(mean) < kNormEpsilon) {
        for (int t = 0; t < grid.T; ++t) out.at(r, c, t) = 0.0;
      } else {
        for (int t = 0; t < grid.T; ++t) out.at(r, c, t) = (grid.at(r, c, t) - mean) / mean;
      }
    }
  return out;
}

void normalize_traces(std::vector<NeuronSample>& samples) {
  for (auto& s : samples) {
    double mean = 0.0;
    for (double v : s.trace) mean += v;
    if (!s.trace.empty()) mean /= double(s.trace.size());
    for (auto& v : s.trace) v = std::fabs(mean) < kNormEpsilon ? 0.0 : (v - mean) / mean;
  }
}

NormalizedField apply_control(const NormalizedField& field, const ControlSpec& spec) {
  if (spec.kind == ControlKind::none) return field;
  NormalizedField out(field.n, field.T);
  if (spec.kind == ControlKind::frame_shuffle) {
    auto pi = make_permutation(std::size_t(field.T), spec.seed);
    for (int r = 0; r < field.n; ++r)
      for (int c = 0; c < field.n; ++c)
        for (int t = 0; t < field.T; ++t) out.at(r, c, t) = field.at(r, c, int(pi[t]));
  } else {
    auto p = make_permutation(std::size_t(field.n) * field.n, spec.seed);
    for (std::size_t i = 0; i < p.size(); ++i) {
      int ro = int(i) / field.n, co = int(i) % field.n;
      int ri = int(p[i]) / field.n, ci = int(p[i]) % field.n;
      for (int t = 0; t < field.T; ++t) out.at(ro, co, t) = field.at(ri, ci, t);
    }
  }
  return out;
}

}  // namespace zgf
