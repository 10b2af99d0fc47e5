#include "zgf/synth.hpp"

#include <cmath>
#include <stdexcept>

#include "zgf/grid_io.hpp"
#include "zgf/rng.hpp"

namespace fs = std::filesystem;

namespace zgf {

SynthClassSpec make_ring_class(const std::string& name, int n_grid, int T, int Z,
                               double row0, double col0, double drow, double dcol,
                               double rin, double rout, int on_frames, int off_frames,
                               int phase, double noise_sigma) {
  SynthClassSpec s;
  s.name = name;
  s.n_grid = n_grid;
  s.T = T;
  s.Z = Z;
  s.noise_sigma = noise_sigma;
  int period = on_frames + off_frames;
  for (int t = 0; t < T; ++t) {
    s.center_row.push_back(row0 + drow * t);
    s.center_col.push_back(col0 + dcol * t);
    s.r_inner.push_back(rin);
    s.r_outer.push_back(rout);
    bool active = off_frames == 0 || ((t + phase) % period) < on_frames;
    s.on.push_back(active ? 1 : 0);
  }
  return s;
}

namespace {

void validate(const SynthClassSpec& s) {
  if (s.n_grid < 2 || s.T < 2 || s.Z < 1)
    throw std::invalid_argument("synth: need n_grid >= 2, T >= 2, Z >= 1");
  std::size_t T = std::size_t(s.T);
  if (s.center_row.size() != T || s.center_col.size() != T || s.r_inner.size() != T ||
      s.r_outer.size() != T || s.on.size() != T)
    throw std::invalid_argument("synth: schedules must have length T");
  for (int t = 0; t < s.T; ++t) {
    if (!s.on[std::size_t(t)]) continue;
    double r = s.r_outer[std::size_t(t)];
    if (s.center_row[std::size_t(t)] - r < 0 || s.center_row[std::size_t(t)] + r > s.n_grid - 1 ||
        s.center_col[std::size_t(t)] - r < 0 || s.center_col[std::size_t(t)] + r > s.n_grid - 1)
      throw std::invalid_argument("synth: annulus out of bounds at frame " + std::to_string(t));
    if (s.r_inner[std::size_t(t)] < 0 || s.r_inner[std::size_t(t)] >= r)
      throw std::invalid_argument("synth: bad radii at frame " + std::to_string(t));
  }
}

}  // namespace

std::vector<ActivityGrid> gen_trial(const SynthClassSpec& spec, std::uint64_t seed) {
  validate(spec);
  std::vector<ActivityGrid> planes;
  planes.reserve(std::size_t(spec.Z));
  for (int p = 0; p < spec.Z; ++p) {
    Rng rng(mix_seed(seed, std::uint64_t(p)));
    ActivityGrid g(spec.n_grid, spec.T);
    g.plane_id = p;
    for (int row = 0; row < spec.n_grid; ++row)
      for (int col = 0; col < spec.n_grid; ++col)
        for (int t = 0; t < spec.T; ++t) {
          double v = spec.baseline;
          if (spec.on[std::size_t(t)]) {
            double dr = row - spec.center_row[std::size_t(t)];
            double dc = col - spec.center_col[std::size_t(t)];
            double dist = std::sqrt(dr * dr + dc * dc);
            if (dist >= spec.r_inner[std::size_t(t)] && dist <= spec.r_outer[std::size_t(t)])
              v = spec.amplitude;
          }
          if (spec.noise_sigma > 0.0) v += spec.noise_sigma * rng.normal();
          g.at(row, col, t) = float(v);
        }
    planes.push_back(std::move(g));
  }
  return planes;
}

void gen_dataset(const std::vector<SynthClassSpec>& classes, int repeats, std::uint64_t seed,
                 const fs::path& root, const std::string& mouse) {
  if (classes.size() < 2) throw std::invalid_argument("gen_dataset: need >= 2 classes");
  if (repeats < 1) throw std::invalid_argument("gen_dataset: need >= 1 repeat");
  for (const auto& c : classes) {
    validate(c);
    if (c.n_grid != classes[0].n_grid || c.T != classes[0].T || c.Z != classes[0].Z)
      throw std::invalid_argument("gen_dataset: classes must share n_grid/T/Z");
  }

  MouseMeta meta;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    const auto& spec = classes[c];
    for (int r = 0; r < repeats; ++r) {
      std::string video = spec.name + "_r" + std::to_string(r);
      std::uint64_t trial_seed = mix_seed(mix_seed(seed, std::uint64_t(c)), std::uint64_t(r));
      auto planes = gen_trial(spec, trial_seed);
      for (auto& g : planes) {
        g.mouse_id = mouse;
        g.video_id = video;
        g.video_type = spec.video_type;
        fs::path path = grid_path(root, mouse, g.plane_id, video);
        fs::create_directories(path.parent_path());
        store_grid(g, path);
      }
      meta[video] = VideoMeta{spec.video_type, int(c)};
    }
  }
  store_meta(meta, root / mouse / "meta.json");
}

}  // namespace zgf
