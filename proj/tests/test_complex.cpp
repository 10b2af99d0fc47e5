#include <doctest.h>

#include <algorithm>

#include "support/helpers.hpp"
#include "support/oracle.hpp"
#include "zgf/complex.hpp"
#include "zgf/rng.hpp"

using namespace zgf;
using namespace zgf::testing;

namespace {

int count_dim(const SimplicialComplex& c, int k) {
  int n = 0;
  for (const auto& s : c.simplices) n += s.dim() == k;
  return n;
}

}  // namespace

TEST_CASE("superlevel_mask uses strict inequality") {
  std::vector<double> zeros(9, 0.0);
  CHECK(superlevel_mask(zeros, 3, 0.0).count() == 0);

  std::vector<double> diag(9, 0.0);
  for (int i = 0; i < 3; ++i) diag[std::size_t(i) * 3 + i] = 1.0;
  BitMask m = superlevel_mask(diag, 3, 0.0);
  CHECK(m.count() == 3);
  for (int i = 0; i < 3; ++i) CHECK(m.at(i, i));

  std::vector<double> ones(9, 1.0);
  CHECK(superlevel_mask(ones, 3, 0.0).count() == 9);
}

TEST_CASE("cubical_cells counts") {
  SUBCASE("single pixel") {
    auto cells = cubical_cells(mask_of({"#.", ".."}));
    CHECK(cells.vertices.size() == 1);
    CHECK(cells.edges.empty());
    CHECK(cells.squares.empty());
  }
  SUBCASE("2x2 block") {
    auto cells = cubical_cells(mask_of({"##", "##"}));
    CHECK(cells.vertices.size() == 4);
    CHECK(cells.edges.size() == 4);
    CHECK(cells.squares.size() == 1);
  }
  SUBCASE("3x3 ring has no squares") {
    auto cells = cubical_cells(ring3());
    CHECK(cells.vertices.size() == 8);
    CHECK(cells.edges.size() == 8);
    CHECK(cells.squares.empty());
  }
}

TEST_CASE("closure_adapter") {
  SUBCASE("empty") { CHECK(complex_of(mask_of({"..", ".."})).empty()); }
  SUBCASE("one square becomes the 2-skeleton of a tetrahedron") {
    auto c = complex_of(mask_of({"##", "##"}));
    CHECK(count_dim(c, 0) == 4);
    CHECK(count_dim(c, 1) == 6);
    CHECK(count_dim(c, 2) == 4);
    CHECK(c.is_face_closed());
    CHECK(oracle::oracle_betti(c, 0) == 1);
    CHECK(oracle::oracle_betti(c, 1) == 0);
  }
  SUBCASE("3x3 ring is the plain 8-cycle") {
    auto c = complex_of(ring3());
    CHECK(count_dim(c, 0) == 8);
    CHECK(count_dim(c, 1) == 8);
    CHECK(count_dim(c, 2) == 0);
    CHECK(oracle::oracle_betti(c, 0) == 1);
    CHECK(oracle::oracle_betti(c, 1) == 1);
  }
}

TEST_CASE("intersect algebra") {
  auto ring = complex_of(ring3());
  auto full = complex_of(full3());
  CHECK(intersect(ring, ring) == ring);
  CHECK(intersect(ring, SimplicialComplex{}) == SimplicialComplex{});
  // The ring has no diagonals, so intersecting with the full closure complex
  // returns the ring itself.
  CHECK(intersect(ring, full) == ring);
  CHECK(intersect(full, ring) == ring);
}

TEST_CASE("face closure and monotonicity on random masks") {
  Rng rng(7);
  for (int it = 0; it < 50; ++it) {
    BitMask a = random_mask(5, 0.5, rng);
    BitMask b = a;
    // b grows a: any inactive cell may switch on.
    for (int r = 0; r < 5; ++r)
      for (int c = 0; c < 5; ++c)
        if (!b.at(r, c) && rng.uniform() < 0.3) b.set(r, c, true);
    auto ca = complex_of(a), cb = complex_of(b);
    CHECK(ca.is_face_closed());
    CHECK(cb.is_face_closed());
    for (const auto& s : ca.simplices) CHECK(cb.contains(s));
    auto inter = intersect(ca, cb);
    CHECK(inter == ca);
    CHECK(intersect(cb, ca) == inter);
  }
}

TEST_CASE("deterministic enumeration and dump") {
  auto a = complex_of(ring3());
  auto b = complex_of(ring3());
  CHECK(dump(a) == dump(b));
  CHECK(std::is_sorted(a.simplices.begin(), a.simplices.end()));
}
