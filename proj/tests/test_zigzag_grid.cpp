#include <doctest.h>

#include <algorithm>

#include "support/helpers.hpp"
#include "zgf/zigzag.hpp"
#include "zgf/zigzag_grid.hpp"

using namespace zgf;
using namespace zgf::testing;

namespace {

std::vector<PersistenceInterval> sorted(std::vector<PersistenceInterval> bars) {
  std::sort(bars.begin(), bars.end());
  return bars;
}

std::vector<PersistenceInterval> reference_of_frames(const std::vector<BitMask>& frames) {
  std::vector<SimplicialComplex> cs;
  for (const auto& m : frames) cs.push_back(complex_of(m));
  return compute_zigzag(encode(build_sequence(cs)));
}

}  // namespace

TEST_CASE("interleave_masks AND structure") {
  auto a = mask_of({"##.", "...", "..."});
  auto b = mask_of({".#.", ".#.", "..."});
  auto layers = interleave_masks({a, b});
  REQUIRE(layers.size() == 3);
  CHECK(layers[0].active == a.active);
  CHECK(layers[2].active == b.active);
  CHECK(layers[1].count() == 1);
  CHECK(layers[1].at(0, 1));
}

TEST_CASE("grid engine matches the reference engine on hand cases") {
  CHECK(sorted(compute_zigzag_frames({ring3(), ring3(), ring3()})) ==
        sorted(reference_of_frames({ring3(), ring3(), ring3()})));
  CHECK(sorted(compute_zigzag_frames({ring3(), ring3(), full3()})) ==
        sorted(reference_of_frames({ring3(), ring3(), full3()})));
}

TEST_CASE("grid engine matches the reference engine on random masks") {
  Rng rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 3 + int(rng.below(3));
    int T = 2 + int(rng.below(4));
    double p = 0.3 + 0.4 * rng.uniform();
    std::vector<BitMask> frames;
    for (int t = 0; t < T; ++t) frames.push_back(random_mask(n, p, rng));
    CHECK(sorted(compute_zigzag_frames(frames)) == sorted(reference_of_frames(frames)));
  }
}

TEST_CASE("grid engine handles empty and full frames") {
  BitMask empty(3);
  CHECK(compute_zigzag_frames({empty, empty}).empty());
  auto bars = sorted(compute_zigzag_frames({full3(), empty, full3()}));
  // Each full frame contributes one component; nothing survives the gap.
  CHECK(bars == std::vector<PersistenceInterval>{{0, 0, 0}, {0, 4, 4}});
}
