#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace zgf {

/// Boolean activity mask over an n_grid x n_grid field.
struct BitMask {
  int n = 0;
  std::vector<std::uint8_t> active;  // row-major, n*n entries

  BitMask() = default;
  explicit BitMask(int n_grid) : n(n_grid), active(std::size_t(n_grid) * n_grid, 0) {}

  bool at(int row, int col) const { return active[std::size_t(row) * n + col] != 0; }
  void set(int row, int col, bool v) { active[std::size_t(row) * n + col] = v ? 1 : 0; }
  std::size_t count() const;
};

/// Simplex of dimension 0..2, stored as strictly increasing global vertex ids
/// (id = row * n_grid + col for grid-derived complexes).
struct Simplex {
  std::array<std::uint32_t, 3> v{0, 0, 0};
  std::uint8_t nverts = 0;

  Simplex() = default;
  Simplex(std::uint32_t a) : v{a, 0, 0}, nverts(1) {}
  Simplex(std::uint32_t a, std::uint32_t b);
  Simplex(std::uint32_t a, std::uint32_t b, std::uint32_t c);

  int dim() const { return int(nverts) - 1; }

  bool operator==(const Simplex& o) const {
    if (nverts != o.nverts) return false;
    for (int i = 0; i < nverts; ++i)
      if (v[i] != o.v[i]) return false;
    return true;
  }
  /// Lexicographic on the vertex sequence (prefix orders first).
  bool operator<(const Simplex& o) const;

  /// Codimension-1 faces (dim-1 simplices of this simplex).
  std::vector<Simplex> facets() const;
};

/// Face-closed set of simplices with deterministic (lexicographic) order.
struct SimplicialComplex {
  std::vector<Simplex> simplices;  // sorted, unique

  bool contains(const Simplex& s) const;
  std::size_t size() const { return simplices.size(); }
  bool empty() const { return simplices.empty(); }

  /// Insert a simplex together with all its faces.
  void insert_closed(const Simplex& s);
  /// Sort + dedupe after bulk insertion.
  void normalize();
  bool is_face_closed() const;

  bool operator==(const SimplicialComplex& o) const { return simplices == o.simplices; }
};

struct CubicalCells {
  int n = 0;
  std::vector<std::uint32_t> vertices;             // active grid point ids
  std::vector<std::array<std::uint32_t, 2>> edges; // axis-aligned unit edges
  std::vector<std::array<std::uint32_t, 4>> squares;  // corners v00,v10,v01,v11
};

BitMask superlevel_mask(const std::vector<double>& frame, int n_grid, double threshold = 0.0);

/// Full-subcomplex rule: an edge/square is active iff all its corner vertices are.
CubicalCells cubical_cells(const BitMask& mask);

/// Abstract closure: vertices and edges carried over; each active square
/// contributes both diagonals and all four triangles on its corners.
SimplicialComplex closure_adapter(const CubicalCells& cells);

SimplicialComplex intersect(const SimplicialComplex& a, const SimplicialComplex& b);

/// Debug dump: one simplex per line, space-separated sorted vertex ids.
std::string dump(const SimplicialComplex& c);

}  // namespace zgf
