#include "zgf/module_decomp.hpp"

#include <algorithm>
#include <stdexcept>

namespace zgf {

namespace {

struct LiveClass {
  int birth = 0;
  bool backward_born = false;  // born as a kernel element of a backward arrow
  Bitvec vec;                  // coordinates over the current position's basis
};

// Processing order: oldest birth first. A dying generator may only be the
// current class plus strictly-older classes (anything younger could not be
// traced back to the dying class's own birth), so eliminations must reduce
// each class against older ones only. With that order, a forward-arrow death
// lands on the youngest constituent of the vanishing combination, and a
// backward-arrow death lands on the class that cannot be written as older
// survivors modulo the incoming image — both matching the unique interval
// decomposition.
long strength_key(const LiveClass& c) { return long(c.birth); }

Bitvec apply_columns(const std::vector<Bitvec>& cols, const Bitvec& v, std::size_t target_dim) {
  Bitvec out(target_dim);
  for (std::size_t b = 0; b < v.size(); ++b)
    if (v.test(b)) out ^= cols[b];
  return out;
}

}  // namespace

std::vector<std::pair<int, int>> decompose_zigzag_module(const std::vector<int>& dims,
                                                         const std::vector<ModuleArrow>& arrows) {
  if (dims.empty()) return {};
  if (arrows.size() + 1 != dims.size())
    throw std::invalid_argument("decompose_zigzag_module: arrow/dim count mismatch");

  std::vector<std::pair<int, int>> intervals;
  std::vector<LiveClass> live;
  live.reserve(dims[0]);
  for (int b = 0; b < dims[0]; ++b) {
    LiveClass c;
    c.birth = 0;
    c.vec = Bitvec(dims[0]);
    c.vec.set(b);
    live.push_back(std::move(c));
  }

  for (std::size_t a = 0; a < arrows.size(); ++a) {
    const int pos = int(a);
    const std::size_t src_dim = dims[arrows[a].forward ? a : a + 1];
    const std::size_t dst_dim = dims[arrows[a].forward ? a + 1 : a];
    if (arrows[a].columns.size() != src_dim)
      throw std::invalid_argument("decompose_zigzag_module: bad matrix shape");

    std::stable_sort(live.begin(), live.end(), [](const LiveClass& x, const LiveClass& y) {
      return strength_key(x) < strength_key(y);
    });

    std::vector<LiveClass> next;

    if (arrows[a].forward) {
      // Deaths: kernel of the map on the span of live classes, assigned to the
      // strongest member of each vanishing combination.
      std::vector<long> pivot_owner(dst_dim, -1);
      std::vector<Bitvec> owned;
      for (auto& c : live) {
        Bitvec w = apply_columns(arrows[a].columns, c.vec, dst_dim);
        long p;
        while ((p = w.pivot()) >= 0 && pivot_owner[p] >= 0) w ^= owned[pivot_owner[p]];
        if (p < 0) {
          intervals.emplace_back(c.birth, pos);
        } else {
          pivot_owner[p] = long(owned.size());
          owned.push_back(w);
          LiveClass s;
          s.birth = c.birth;
          s.backward_born = c.backward_born;
          s.vec = std::move(w);
          next.push_back(std::move(s));
        }
      }
      // Births: complete the image to a basis of the target space.
      for (std::size_t t = 0; t < dst_dim; ++t) {
        Bitvec e(dst_dim);
        e.set(t);
        long p;
        while ((p = e.pivot()) >= 0 && pivot_owner[p] >= 0) e ^= owned[pivot_owner[p]];
        if (p >= 0) {
          pivot_owner[p] = long(owned.size());
          owned.push_back(e);
          LiveClass s;
          s.birth = pos + 1;
          s.backward_born = false;
          s.vec = std::move(e);
          next.push_back(std::move(s));
        }
      }
    } else {
      // Backward arrow g: V_{pos+1} -> V_pos. Column-reduce g, tracking
      // preimages, to get an image basis and the kernel.
      std::vector<Bitvec> img, pre;
      std::vector<long> img_pivot(src_dim ? std::max(dst_dim, std::size_t(1)) : 1, -1);
      img_pivot.assign(dst_dim, -1);
      std::vector<LiveClass> kernel_born;
      for (std::size_t j = 0; j < src_dim; ++j) {
        Bitvec col = arrows[a].columns[j];
        Bitvec pj(src_dim);
        pj.set(j);
        long p;
        while ((p = col.pivot()) >= 0 && img_pivot[p] >= 0) {
          col ^= img[img_pivot[p]];
          pj ^= pre[img_pivot[p]];
        }
        if (p < 0) {
          LiveClass s;
          s.birth = pos + 1;
          s.backward_born = true;
          s.vec = std::move(pj);
          kernel_born.push_back(std::move(s));
        } else {
          img_pivot[p] = long(img.size());
          img.push_back(std::move(col));
          pre.push_back(std::move(pj));
        }
      }
      // Live classes: reduce modulo the image (collecting preimages) and the
      // remainders of already-dead weaker classes. In the image -> continues;
      // otherwise dies here.
      std::vector<long> dead_pivot(dst_dim, -1);
      std::vector<Bitvec> dead;
      for (auto& c : live) {
        Bitvec v = c.vec;
        Bitvec u(src_dim);
        long p;
        while ((p = v.pivot()) >= 0) {
          if (img_pivot[p] >= 0) {
            v ^= img[img_pivot[p]];
            u ^= pre[img_pivot[p]];
          } else if (dead_pivot[p] >= 0) {
            v ^= dead[dead_pivot[p]];
          } else {
            break;
          }
        }
        if (p < 0) {
          LiveClass s;
          s.birth = c.birth;
          s.backward_born = c.backward_born;
          s.vec = std::move(u);
          next.push_back(std::move(s));
        } else {
          intervals.emplace_back(c.birth, pos);
          dead_pivot[p] = long(dead.size());
          dead.push_back(std::move(v));
        }
      }
      for (auto& k : kernel_born) next.push_back(std::move(k));
    }

    live = std::move(next);
  }

  const int last = int(dims.size()) - 1;
  for (const auto& c : live) intervals.emplace_back(c.birth, last);
  return intervals;
}

}  // namespace zgf
