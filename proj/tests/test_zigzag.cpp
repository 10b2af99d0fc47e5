#include <doctest.h>

#include <algorithm>

#include "support/helpers.hpp"
#include "support/oracle.hpp"
#include "zgf/zigzag.hpp"

using namespace zgf;
using namespace zgf::testing;

namespace {

std::vector<PersistenceInterval> sorted(std::vector<PersistenceInterval> bars) {
  std::sort(bars.begin(), bars.end());
  return bars;
}

std::vector<PersistenceInterval> zigzag_of_frames(const std::vector<BitMask>& frames) {
  std::vector<SimplicialComplex> cs;
  for (const auto& m : frames) cs.push_back(complex_of(m));
  return compute_zigzag(encode(build_sequence(cs)));
}

}  // namespace

TEST_CASE("build_sequence layer structure") {
  auto ring = complex_of(ring3());
  auto full = complex_of(full3());

  SUBCASE("two identical frames give three equal layers") {
    auto seq = build_sequence({ring, ring});
    REQUIRE(seq.layers.size() == 3);
    CHECK(seq.layers[0] == ring);
    CHECK(seq.layers[1] == ring);
    CHECK(seq.layers[2] == ring);
  }
  SUBCASE("disjoint frames give an empty middle layer") {
    auto left = complex_of(mask_of({"#..", "...", "..."}));
    auto right = complex_of(mask_of({"...", "...", "..#"}));
    auto seq = build_sequence({left, right});
    REQUIRE(seq.layers.size() == 3);
    CHECK(seq.layers[1].empty());
  }
  SUBCASE("ring, ring, full block") {
    auto seq = build_sequence({ring, ring, full});
    REQUIRE(seq.layers.size() == 5);
    CHECK(seq.layers[0] == ring);
    CHECK(seq.layers[1] == ring);
    CHECK(seq.layers[2] == ring);
    CHECK(seq.layers[3] == ring);  // ring has no diagonals to share
    CHECK(seq.layers[4] == full);
  }
  SUBCASE("fewer than two frames is an error") {
    CHECK_THROWS(build_sequence({ring}));
    CHECK_THROWS(build_sequence({}));
  }
}

TEST_CASE("encode toggle runs") {
  SimplicialComplex with_v, without;
  with_v.insert_closed(Simplex(0u));

  SUBCASE("present everywhere") {
    ZigzagSequence seq{{with_v, with_v, with_v}};
    auto f = encode(seq);
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].toggles == std::vector<int>{0, 3});
  }
  SUBCASE("present only at layer 0") {
    ZigzagSequence seq{{with_v, without, without}};
    auto f = encode(seq);
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].toggles == std::vector<int>{0, 1});
  }
  SUBCASE("two runs: layers 0-2 and 4 of 5") {
    ZigzagSequence seq{{with_v, with_v, with_v, without, with_v}};
    auto f = encode(seq);
    REQUIRE(f.entries.size() == 1);
    CHECK(f.entries[0].toggles == std::vector<int>{0, 3, 4, 5});
  }
  SUBCASE("decode inverts encode") {
    ZigzagSequence seq{{with_v, without, with_v, with_v, without}};
    auto layers = decode_layers(encode(seq));
    REQUIRE(layers.size() == 5);
    for (std::size_t i = 0; i < 5; ++i) CHECK(layers[i] == seq.layers[i]);
  }
}

TEST_CASE("compute_zigzag hand-checked barcodes") {
  SUBCASE("static 8-cycle over 5 layers") {
    auto bars = zigzag_of_frames({ring3(), ring3(), ring3()});
    CHECK(sorted(select_dimension(bars, 0)) ==
          std::vector<PersistenceInterval>{{0, 0, 4}});
    CHECK(sorted(select_dimension(bars, 1)) ==
          std::vector<PersistenceInterval>{{1, 0, 4}});
  }
  SUBCASE("ring, ring, full block") {
    auto bars = zigzag_of_frames({ring3(), ring3(), full3()});
    CHECK(sorted(select_dimension(bars, 0)) ==
          std::vector<PersistenceInterval>{{0, 0, 4}});
    CHECK(sorted(select_dimension(bars, 1)) ==
          std::vector<PersistenceInterval>{{1, 0, 3}});
  }
  SUBCASE("two disjoint vertices, two frames") {
    auto m = mask_of({"#.#", "...", "..."});
    auto bars = zigzag_of_frames({m, m});
    CHECK(sorted(bars) ==
          std::vector<PersistenceInterval>{{0, 0, 2}, {0, 0, 2}});
  }
}

TEST_CASE("select_dimension filters and partitions") {
  std::vector<PersistenceInterval> bars{{0, 0, 1}, {1, 0, 2}, {0, 1, 3}};
  CHECK(select_dimension(bars, 1) == std::vector<PersistenceInterval>{{1, 0, 2}});
  CHECK(select_dimension({}, 1).empty());
  CHECK(select_dimension(bars, 0).size() + select_dimension(bars, 1).size() == bars.size());
}

TEST_CASE("barcode csv dump is sorted") {
  std::vector<PersistenceInterval> bars{{1, 0, 2}, {0, 1, 3}, {0, 0, 1}};
  CHECK(barcode_csv(bars) == "dim,birth,death\n0,0,1\n0,1,3\n1,0,2\n");
}

TEST_CASE("interval multiset invariant under entry permutation") {
  Rng rng(11);
  std::vector<BitMask> frames;
  for (int t = 0; t < 4; ++t) frames.push_back(random_mask(4, 0.5, rng));
  std::vector<SimplicialComplex> cs;
  for (const auto& m : frames) cs.push_back(complex_of(m));
  auto f = encode(build_sequence(cs));
  auto base = sorted(compute_zigzag(f));
  for (int it = 0; it < 5; ++it) {
    rng.shuffle(f.entries);
    CHECK(sorted(compute_zigzag(f)) == base);
  }
}

TEST_CASE("pointwise Betti and arrow ranks on random small sequences") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 3 + int(rng.below(2));
    int T = 2 + int(rng.below(3));
    std::vector<SimplicialComplex> frames;
    for (int t = 0; t < T; ++t) frames.push_back(complex_of(random_mask(n, 0.5, rng)));
    auto seq = build_sequence(frames);
    auto bars = compute_zigzag(encode(seq));
    const int L = int(seq.layers.size());
    for (int k = 0; k <= 1; ++k) {
      for (int i = 0; i < L; ++i) {
        int alive = 0;
        for (const auto& b : bars) alive += b.dim == k && b.birth <= i && i <= b.death;
        CHECK(alive == oracle::oracle_betti(seq.layers[std::size_t(i)], k));
      }
      for (int j = 1; j < L; j += 2) {
        for (int nb : {j - 1, j + 1}) {
          int covering = 0;
          for (const auto& b : bars)
            covering += b.dim == k && b.birth <= std::min(j, nb) && std::max(j, nb) <= b.death;
          CHECK(covering == oracle::oracle_arrow_rank(seq.layers[std::size_t(j)],
                                                      seq.layers[std::size_t(nb)], k));
        }
      }
    }
  }
}
