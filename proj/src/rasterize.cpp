#include "zgf/rasterize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

namespace zgf {

namespace {

struct Pt {
  double x, y;
};

struct Tri {
  int a, b, c;
};

double cross(const Pt& o, const Pt& p, const Pt& q) {
  return (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
}

bool in_circumcircle(const Pt& a, const Pt& b, const Pt& c, const Pt& p) {
  // Standard incircle determinant; assumes (a,b,c) counterclockwise.
  double ax = a.x - p.x, ay = a.y - p.y;
  double bx = b.x - p.x, by = b.y - p.y;
  double cx = c.x - p.x, cy = c.y - p.y;
  double det = (ax * ax + ay * ay) * (bx * cy - cx * by) -
               (bx * bx + by * by) * (ax * cy - cx * ay) +
               (cx * cx + cy * cy) * (ax * by - bx * ay);
  return det > 1e-14;
}

/// Bowyer-Watson Delaunay triangulation. Input points must be distinct and
/// not all collinear. Returns triangles with counterclockwise vertex order.
std::vector<Tri> delaunay(const std::vector<Pt>& pts) {
  const int n = int(pts.size());
  std::vector<Pt> all = pts;
  // Super-triangle comfortably containing [0,1]^2.
  all.push_back({-30.0, -30.0});
  all.push_back({60.0, -30.0});
  all.push_back({-30.0, 60.0});
  std::vector<Tri> tris{{n, n + 1, n + 2}};

  for (int i = 0; i < n; ++i) {
    std::vector<Tri> keep;
    std::map<std::pair<int, int>, int> boundary;  // undirected edge -> count
    for (const auto& t : tris) {
      if (in_circumcircle(all[t.a], all[t.b], all[t.c], all[i])) {
        std::array<std::pair<int, int>, 3> edges{
            std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}};
        for (auto [u, v] : edges) {
          auto key = std::minmax(u, v);
          boundary[{key.first, key.second}]++;
        }
      } else {
        keep.push_back(t);
      }
    }
    // Cavity boundary = edges belonging to exactly one removed triangle.
    // Re-collect them with orientation by walking removed triangles again.
    std::vector<std::pair<int, int>> rim;
    for (const auto& t : tris) {
      if (!in_circumcircle(all[t.a], all[t.b], all[t.c], all[i])) continue;
      std::array<std::pair<int, int>, 3> edges{
          std::pair{t.a, t.b}, std::pair{t.b, t.c}, std::pair{t.c, t.a}};
      for (auto [u, v] : edges) {
        auto key = std::minmax(u, v);
        if (boundary[{key.first, key.second}] == 1) rim.push_back({u, v});
      }
    }
    for (auto [u, v] : rim) {
      Tri t{u, v, i};
      if (cross(all[t.a], all[t.b], all[t.c]) < 0) std::swap(t.b, t.c);
      keep.push_back(t);
    }
    tris = std::move(keep);
  }

  std::vector<Tri> out;
  for (const auto& t : tris)
    if (t.a < n && t.b < n && t.c < n) out.push_back(t);
  return out;
}

struct GridPointInterp {
  int tri = -1;                     // containing triangle, -1 = outside hull
  std::array<double, 3> bary{0, 0, 0};
};

}  // namespace

ActivityGrid rasterize(const std::vector<NeuronSample>& samples, int n_grid,
                       InterpMethod method) {
  if (n_grid < 2) throw std::invalid_argument("rasterize: n_grid must be >= 2");
  if (samples.empty()) throw std::invalid_argument("rasterize: no samples");
  const int T = int(samples[0].trace.size());
  if (T < 1) throw std::invalid_argument("rasterize: empty traces");
  for (const auto& s : samples) {
    if (int(s.trace.size()) != T)
      throw std::invalid_argument("rasterize: inconsistent trace lengths");
    if (!(s.x >= 0.0 && s.x <= 1.0 && s.y >= 0.0 && s.y <= 1.0) || !std::isfinite(s.x) ||
        !std::isfinite(s.y))
      throw std::invalid_argument("rasterize: coordinates must lie in [0,1]^2");
  }

  // Drop exact coordinate duplicates (first sample wins).
  std::vector<int> use;
  {
    std::set<std::pair<double, double>> seen;
    for (int i = 0; i < int(samples.size()); ++i)
      if (seen.insert({samples[i].x, samples[i].y}).second) use.push_back(i);
  }
  std::vector<Pt> pts;
  pts.reserve(use.size());
  for (int i : use) pts.push_back({samples[i].x, samples[i].y});

  ActivityGrid grid(n_grid, T);
  grid.n = n_grid;

  auto grid_xy = [n_grid](int row, int col) {
    return Pt{double(col) / (n_grid - 1), double(row) / (n_grid - 1)};
  };

  if (method == InterpMethod::nearest) {
    for (int r = 0; r < n_grid; ++r)
      for (int c = 0; c < n_grid; ++c) {
        Pt g = grid_xy(r, c);
        int best = use[0];
        double bestd = 1e300;
        for (int i : use) {
          double dx = samples[i].x - g.x, dy = samples[i].y - g.y;
          double d = dx * dx + dy * dy;
          if (d < bestd) {
            bestd = d;
            best = i;
          }
        }
        for (int t = 0; t < T; ++t) grid.at(r, c, t) = float(samples[best].trace[t]);
      }
    return grid;
  }

  if (pts.size() < 3) throw std::invalid_argument("rasterize: need >= 3 distinct points");
  {
    // All-collinear point sets cannot be triangulated.
    double maxc = 0.0;
    for (std::size_t i = 1; i + 1 < pts.size() + 1; ++i)
      for (std::size_t j = i + 1; j < pts.size(); ++j)
        maxc = std::max(maxc, std::fabs(cross(pts[0], pts[i], pts[j])));
    if (maxc < 1e-12) throw std::invalid_argument("rasterize: degenerate (collinear) points");
  }

  auto tris = delaunay(pts);
  if (tris.empty()) throw std::invalid_argument("rasterize: triangulation failed");

  // Locate every grid point once; interpolation weights are frame-independent.
  std::vector<GridPointInterp> loc(std::size_t(n_grid) * n_grid);
  for (int r = 0; r < n_grid; ++r)
    for (int c = 0; c < n_grid; ++c) {
      Pt g = grid_xy(r, c);
      auto& gi = loc[std::size_t(r) * n_grid + c];
      for (int ti = 0; ti < int(tris.size()); ++ti) {
        const auto& t = tris[ti];
        double area = cross(pts[t.a], pts[t.b], pts[t.c]);
        if (std::fabs(area) < 1e-300) continue;
        double w0 = cross(g, pts[t.b], pts[t.c]) / area;
        double w1 = cross(pts[t.a], g, pts[t.c]) / area;
        double w2 = cross(pts[t.a], pts[t.b], g) / area;
        const double eps = -1e-9;
        if (w0 >= eps && w1 >= eps && w2 >= eps) {
          gi.tri = ti;
          gi.bary = {w0, w1, w2};
          break;
        }
      }
    }

  // Vertex gradients (cubic only): weighted least squares over Delaunay
  // neighbors, precomputed as neighbor lists + 2x2 normal matrices.
  std::vector<std::vector<int>> nbr(pts.size());
  if (method == InterpMethod::cubic) {
    std::vector<std::set<int>> ns(pts.size());
    for (const auto& t : tris) {
      ns[t.a].insert(t.b);
      ns[t.a].insert(t.c);
      ns[t.b].insert(t.a);
      ns[t.b].insert(t.c);
      ns[t.c].insert(t.a);
      ns[t.c].insert(t.b);
    }
    for (std::size_t i = 0; i < pts.size(); ++i) nbr[i].assign(ns[i].begin(), ns[i].end());
  }

  std::vector<double> vals(pts.size());
  std::vector<std::array<double, 2>> grads(pts.size(), {0.0, 0.0});

  for (int t = 0; t < T; ++t) {
    double mean = 0.0;
    for (const auto& s : samples) mean += s.trace[t];
    mean /= double(samples.size());
    for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = samples[use[i]].trace[t];

    if (method == InterpMethod::cubic) {
      for (std::size_t i = 0; i < pts.size(); ++i) {
        double sxx = 0, sxy = 0, syy = 0, bx = 0, by = 0;
        for (int j : nbr[i]) {
          double dx = pts[j].x - pts[i].x, dy = pts[j].y - pts[i].y;
          double w = 1.0 / std::max(dx * dx + dy * dy, 1e-12);
          double df = vals[j] - vals[i];
          sxx += w * dx * dx;
          sxy += w * dx * dy;
          syy += w * dy * dy;
          bx += w * df * dx;
          by += w * df * dy;
        }
        double det = sxx * syy - sxy * sxy;
        if (std::fabs(det) > 1e-14) {
          grads[i] = {(syy * bx - sxy * by) / det, (sxx * by - sxy * bx) / det};
        } else {
          grads[i] = {0.0, 0.0};
        }
      }
    }

    for (int r = 0; r < n_grid; ++r)
      for (int c = 0; c < n_grid; ++c) {
        const auto& gi = loc[std::size_t(r) * n_grid + c];
        double v;
        if (gi.tri < 0) {
          v = mean;  // outside the hull: inactive after normalization
        } else {
          const auto& tri = tris[gi.tri];
          const std::array<int, 3> vid{tri.a, tri.b, tri.c};
          const auto& w = gi.bary;
          if (method == InterpMethod::linear) {
            v = w[0] * vals[vid[0]] + w[1] * vals[vid[1]] + w[2] * vals[vid[2]];
          } else {
            // Cubic Bezier triangle from vertex values and gradients; interior
            // control point chosen for quadratic precision.
            auto dot = [&](int vi, int vj) {
              return grads[vi][0] * (pts[vj].x - pts[vi].x) +
                     grads[vi][1] * (pts[vj].y - pts[vi].y);
            };
            const int i0 = vid[0], i1 = vid[1], i2 = vid[2];
            double b300 = vals[i0], b030 = vals[i1], b003 = vals[i2];
            double b210 = b300 + dot(i0, i1) / 3.0, b201 = b300 + dot(i0, i2) / 3.0;
            double b120 = b030 + dot(i1, i0) / 3.0, b021 = b030 + dot(i1, i2) / 3.0;
            double b102 = b003 + dot(i2, i0) / 3.0, b012 = b003 + dot(i2, i1) / 3.0;
            double b111 = (b210 + b201 + b120 + b021 + b102 + b012) / 4.0 -
                          (b300 + b030 + b003) / 6.0;
            double u = w[0], s = w[1], q = w[2];
            v = b300 * u * u * u + b030 * s * s * s + b003 * q * q * q +
                3 * (b210 * u * u * s + b201 * u * u * q + b120 * u * s * s +
                     b021 * s * s * q + b102 * u * q * q + b012 * s * q * q) +
                6 * b111 * u * s * q;
          }
        }
        grid.at(r, c, t) = float(v);
      }
  }
  return grid;
}

}  // namespace zgf
