// Benchmark: fast grid engine vs reference engine on a single plane, and the
// batch descriptor pipeline at increasing worker counts. Not registered as a
// test; run manually from the build tree.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <thread>

#include "zgf/pipeline.hpp"
#include "zgf/synth.hpp"

namespace fs = std::filesystem;
using namespace zgf;

namespace {

double time_of(const auto& fn) {
  auto t0 = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main() {
  fs::path base = fs::temp_directory_path() / "zgf_bench";
  fs::remove_all(base);

  // Single plane at production scale.
  auto spec = make_ring_class("bench", 50, 300, 1, 24.5, 24.5, 0.0, 0.0, 6.0, 11.0, 6, 6, 0, 0.3);
  auto planes = gen_trial(spec, 7);
  RunConfig plane_cfg;
  plane_cfg.R = 50;
  plane_cfg.K = 5;

  plane_landscape(planes[0], plane_cfg, ControlSpec{});  // warm-up
  double fast = time_of([&] { plane_landscape(planes[0], plane_cfg, ControlSpec{}); });
  RunConfig ref_cfg = plane_cfg;
  ref_cfg.engine = Engine::reference;
  double ref = time_of([&] { plane_landscape(planes[0], ref_cfg, ControlSpec{}); });
  std::printf("single plane n=50 T=300:\n");
  std::printf("  grid engine      %8.1f ms\n", fast * 1e3);
  std::printf("  reference engine %8.1f ms  (%.1fx slower)\n", ref * 1e3, ref / fast);

  // Batch pipeline, serial vs OpenMP workers.
  RunConfig cfg;
  cfg.dataset_root = base / "data";
  cfg.output_dir = base / "out";
  cfg.n_grid = 30;
  cfg.synth_T = 40;
  cfg.Z = 2;
  cfg.synth_classes = 3;
  cfg.synth_repeats = 10;
  cfg.synth_noise = 0.25;
  cfg.seed = 1;
  run_synth(cfg, true);

  unsigned cores = std::thread::hardware_concurrency();
  std::printf("batch descriptors, 30 trials x 2 planes (host: %u core(s)):\n", cores);
  double serial = 0.0;
  for (int workers : {1, 2, 4}) {
    if (workers > 1 && unsigned(workers) > cores) {
      std::printf("  %d workers: skipped (more workers than cores)\n", workers);
      continue;
    }
    cfg.workers = workers;
    double t = time_of([&] { run_descriptors(cfg); });
    if (workers == 1) serial = t;
    std::printf("  %d worker(s)  %8.1f ms  (%.2fx vs serial)\n", workers, t * 1e3, serial / t);
  }

  fs::remove_all(base);
  return 0;
}
