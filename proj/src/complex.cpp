#include "zgf/complex.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace zgf {

std::size_t BitMask::count() const {
  std::size_t c = 0;
  for (auto b : active) c += b;
  return c;
}

Simplex::Simplex(std::uint32_t a, std::uint32_t b) : nverts(2) {
  if (a > b) std::swap(a, b);
  if (a == b) throw std::invalid_argument("Simplex: repeated vertex");
  v = {a, b, 0};
}

Simplex::Simplex(std::uint32_t a, std::uint32_t b, std::uint32_t c) : nverts(3) {
  std::array<std::uint32_t, 3> t{a, b, c};
  std::sort(t.begin(), t.end());
  if (t[0] == t[1] || t[1] == t[2]) throw std::invalid_argument("Simplex: repeated vertex");
  v = t;
}

bool Simplex::operator<(const Simplex& o) const {
  int n = std::min(nverts, o.nverts);
  for (int i = 0; i < n; ++i) {
    if (v[i] != o.v[i]) return v[i] < o.v[i];
  }
  return nverts < o.nverts;
}

std::vector<Simplex> Simplex::facets() const {
  std::vector<Simplex> out;
  if (nverts == 2) {
    out.push_back(Simplex(v[0]));
    out.push_back(Simplex(v[1]));
  } else if (nverts == 3) {
    out.push_back(Simplex(v[0], v[1]));
    out.push_back(Simplex(v[0], v[2]));
    out.push_back(Simplex(v[1], v[2]));
  }
  return out;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices.begin(), simplices.end(), s);
}

void SimplicialComplex::insert_closed(const Simplex& s) {
  simplices.push_back(s);
  for (const auto& f : s.facets()) insert_closed(f);
}

void SimplicialComplex::normalize() {
  std::sort(simplices.begin(), simplices.end());
  simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
}

bool SimplicialComplex::is_face_closed() const {
  for (const auto& s : simplices)
    for (const auto& f : s.facets())
      if (!contains(f)) return false;
  return true;
}

BitMask superlevel_mask(const std::vector<double>& frame, int n_grid, double threshold) {
  if (frame.size() != std::size_t(n_grid) * n_grid)
    throw std::invalid_argument("superlevel_mask: frame size does not match n_grid");
  BitMask m(n_grid);
  for (std::size_t i = 0; i < frame.size(); ++i) m.active[i] = frame[i] > threshold ? 1 : 0;
  return m;
}

CubicalCells cubical_cells(const BitMask& mask) {
  CubicalCells out;
  const int n = mask.n;
  out.n = n;
  auto id = [n](int r, int c) { return std::uint32_t(r) * n + c; };
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c)
      if (mask.at(r, c)) out.vertices.push_back(id(r, c));
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) {
      if (!mask.at(r, c)) continue;
      if (c + 1 < n && mask.at(r, c + 1)) out.edges.push_back({id(r, c), id(r, c + 1)});
      if (r + 1 < n && mask.at(r + 1, c)) out.edges.push_back({id(r, c), id(r + 1, c)});
    }
  for (int r = 0; r + 1 < n; ++r)
    for (int c = 0; c + 1 < n; ++c) {
      if (mask.at(r, c) && mask.at(r, c + 1) && mask.at(r + 1, c) && mask.at(r + 1, c + 1))
        out.squares.push_back({id(r, c), id(r, c + 1), id(r + 1, c), id(r + 1, c + 1)});
    }
  return out;
}

SimplicialComplex closure_adapter(const CubicalCells& cells) {
  SimplicialComplex out;
  for (auto v : cells.vertices) out.simplices.push_back(Simplex(v));
  for (const auto& e : cells.edges) out.simplices.push_back(Simplex(e[0], e[1]));
  for (const auto& q : cells.squares) {
    // 2-skeleton of the abstract 3-simplex on the four corners:
    // both diagonals plus all four triangles.
    out.simplices.push_back(Simplex(q[0], q[3]));
    out.simplices.push_back(Simplex(q[1], q[2]));
    out.simplices.push_back(Simplex(q[0], q[1], q[2]));
    out.simplices.push_back(Simplex(q[0], q[1], q[3]));
    out.simplices.push_back(Simplex(q[0], q[2], q[3]));
    out.simplices.push_back(Simplex(q[1], q[2], q[3]));
  }
  out.normalize();
  return out;
}

SimplicialComplex intersect(const SimplicialComplex& a, const SimplicialComplex& b) {
  SimplicialComplex out;
  std::set_intersection(a.simplices.begin(), a.simplices.end(), b.simplices.begin(),
                        b.simplices.end(), std::back_inserter(out.simplices));
  return out;
}

std::string dump(const SimplicialComplex& c) {
  std::ostringstream os;
  for (const auto& s : c.simplices) {
    for (int i = 0; i < s.nverts; ++i) {
      if (i) os << ' ';
      os << s.v[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace zgf
