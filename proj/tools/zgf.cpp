// zgf: zigzag-persistence descriptors for frame-wise activity grids.
//
// Subcommands: synth, descriptors, cluster, classify, plot.
// Exit codes: 2 unreadable/invalid config, 3 missing/empty dataset or store,
// 4 empty filter selection, 5 existing output without --force.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "zgf/pipeline.hpp"

namespace {

struct Cli {
  zgf::RunConfig cfg;
  std::string config_path;
  std::string control = "none";
  std::string order = "appendix";
  std::string engine = "grid";
  bool force = false;
};

void add_common(CLI::App* cmd, Cli& cli) {
  cmd->add_option("--config", cli.config_path, "JSON config file (flags override it)");
  cmd->add_option("--dataset", cli.cfg.dataset_root, "dataset root directory");
  cmd->add_option("--out", cli.cfg.output_dir, "output directory");
  cmd->add_option("--n-grid", cli.cfg.n_grid, "grid resolution");
  cmd->add_option("--threshold", cli.cfg.threshold, "superlevel threshold on delta");
  cmd->add_option("-R,--resolution", cli.cfg.R, "landscape samples per layer");
  cmd->add_option("-K,--layers", cli.cfg.K, "landscape layers");
  cmd->add_option("-Z,--planes", cli.cfg.Z, "planes per trial");
  cmd->add_option("--normalize-order", cli.order, "appendix|maintext");
  cmd->add_option("--engine", cli.engine, "grid|reference");
  cmd->add_option("--control", cli.control, "none|frame_shuffle|grid_scramble");
  cmd->add_option("--control-seed", cli.cfg.control.seed, "control permutation seed");
  cmd->add_option("--runs", cli.cfg.runs, "clustering resamplings");
  cmd->add_option("--per-class", cli.cfg.per_class, "samples per class per resampling");
  cmd->add_option("--splits", cli.cfg.splits, "classification splits");
  cmd->add_option("--test-frac", cli.cfg.test_frac, "test fraction per split");
  cmd->add_option("--l2", cli.cfg.l2, "logistic regression L2 strength");
  cmd->add_option("--seed", cli.cfg.seed, "evaluation / synthesis seed");
  cmd->add_option("--mouse", cli.cfg.cluster_mouse, "clustering mouse filter");
  cmd->add_option("--video-type", cli.cfg.cluster_video_type, "clustering video-type filter");
  cmd->add_option("--classes", cli.cfg.synth_classes, "synthetic classes");
  cmd->add_option("--repeats", cli.cfg.synth_repeats, "synthetic repeats per class");
  cmd->add_option("--frames", cli.cfg.synth_T, "synthetic frames per trial");
  cmd->add_option("--noise", cli.cfg.synth_noise, "synthetic noise sigma");
  cmd->add_option("--workers", cli.cfg.workers, "descriptor worker count (ZGF_WORKERS overrides)");
}

// Re-parse so explicit flags win over values taken from --config.
zgf::RunConfig resolve(CLI::App* cmd, Cli& cli) {
  if (!cli.config_path.empty()) {
    zgf::RunConfig from_file = zgf::load_config(cli.config_path);
    auto keep = [&](const std::string& flag) { return cmd->count(flag) > 0; };
    zgf::RunConfig merged = from_file;
    if (keep("--dataset")) merged.dataset_root = cli.cfg.dataset_root;
    if (keep("--out")) merged.output_dir = cli.cfg.output_dir;
    if (keep("--n-grid")) merged.n_grid = cli.cfg.n_grid;
    if (keep("--threshold")) merged.threshold = cli.cfg.threshold;
    if (keep("--resolution")) merged.R = cli.cfg.R;
    if (keep("--layers")) merged.K = cli.cfg.K;
    if (keep("--planes")) merged.Z = cli.cfg.Z;
    if (keep("--control-seed")) merged.control.seed = cli.cfg.control.seed;
    if (keep("--runs")) merged.runs = cli.cfg.runs;
    if (keep("--per-class")) merged.per_class = cli.cfg.per_class;
    if (keep("--splits")) merged.splits = cli.cfg.splits;
    if (keep("--test-frac")) merged.test_frac = cli.cfg.test_frac;
    if (keep("--l2")) merged.l2 = cli.cfg.l2;
    if (keep("--seed")) merged.seed = cli.cfg.seed;
    if (keep("--mouse")) merged.cluster_mouse = cli.cfg.cluster_mouse;
    if (keep("--video-type")) merged.cluster_video_type = cli.cfg.cluster_video_type;
    if (keep("--classes")) merged.synth_classes = cli.cfg.synth_classes;
    if (keep("--repeats")) merged.synth_repeats = cli.cfg.synth_repeats;
    if (keep("--frames")) merged.synth_T = cli.cfg.synth_T;
    if (keep("--noise")) merged.synth_noise = cli.cfg.synth_noise;
    if (keep("--workers")) merged.workers = cli.cfg.workers;
    if (!keep("--normalize-order"))
      cli.order = merged.order == zgf::NormalizeOrder::appendix ? "appendix" : "maintext";
    if (!keep("--engine")) cli.engine = merged.engine == zgf::Engine::grid ? "grid" : "reference";
    if (!keep("--control")) {
      switch (merged.control.kind) {
        case zgf::ControlKind::frame_shuffle: cli.control = "frame_shuffle"; break;
        case zgf::ControlKind::grid_scramble: cli.control = "grid_scramble"; break;
        default: cli.control = "none";
      }
    }
    cli.cfg = merged;
  }
  if (cli.order == "appendix")
    cli.cfg.order = zgf::NormalizeOrder::appendix;
  else if (cli.order == "maintext")
    cli.cfg.order = zgf::NormalizeOrder::maintext;
  else
    throw zgf::ConfigError("unknown --normalize-order: " + cli.order);
  if (cli.engine == "grid")
    cli.cfg.engine = zgf::Engine::grid;
  else if (cli.engine == "reference")
    cli.cfg.engine = zgf::Engine::reference;
  else
    throw zgf::ConfigError("unknown --engine: " + cli.engine);
  if (cli.control == "none")
    cli.cfg.control.kind = zgf::ControlKind::none;
  else if (cli.control == "frame_shuffle")
    cli.cfg.control.kind = zgf::ControlKind::frame_shuffle;
  else if (cli.control == "grid_scramble")
    cli.cfg.control.kind = zgf::ControlKind::grid_scramble;
  else
    throw zgf::ConfigError("unknown --control: " + cli.control);
  return cli.cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time-resolved topological descriptors for activity grids"};
  app.require_subcommand(1);

  Cli cli;
  auto* synth = app.add_subcommand("synth", "generate a synthetic dataset");
  auto* descriptors = app.add_subcommand("descriptors", "compute per-trial descriptors");
  auto* cluster = app.add_subcommand("cluster", "within-mouse clustering of video repeats");
  auto* classify = app.add_subcommand("classify", "video-type or mouse-identity classification");
  auto* plot = app.add_subcommand("plot", "landscape line plots from the descriptor store");
  for (auto* cmd : {synth, descriptors, cluster, classify, plot}) add_common(cmd, cli);
  synth->add_flag("--force", cli.force, "overwrite an existing dataset directory");
  std::string target = "video_type";
  classify->add_option("--target", target, "video_type|mouse");

  CLI11_PARSE(app, argc, argv);

  CLI::App* active = app.get_subcommands().front();
  try {
    zgf::RunConfig cfg = resolve(active, cli);
    if (active == synth) {
      zgf::run_synth(cfg, cli.force);
      std::printf("wrote synthetic dataset: %s\n", cfg.dataset_root.string().c_str());
    } else if (active == descriptors) {
      auto run = zgf::run_descriptors(cfg);
      for (const auto& w : run.warnings) std::fprintf(stderr, "warning: %s\n", w.c_str());
      std::printf("descriptors: %zu trials in %.3f s -> %s\n", run.descriptors.size(),
                  run.total_seconds, cfg.output_dir.string().c_str());
    } else if (active == cluster) {
      auto report = zgf::run_cluster(cfg);
      std::printf("ARI %.3f +- %.3f  AMI %.3f +- %.3f  acc %.3f +- %.3f\n", report.ari_mean,
                  report.ari_std, report.ami_mean, report.ami_std, report.acc_mean,
                  report.acc_std);
    } else if (active == classify) {
      zgf::ClassifyTarget t;
      if (target == "video_type")
        t = zgf::ClassifyTarget::video_type;
      else if (target == "mouse")
        t = zgf::ClassifyTarget::mouse_id;
      else
        throw zgf::ConfigError("unknown --target: " + target);
      auto report = zgf::run_classify(cfg, t);
      std::printf("cv accuracy %.3f +- %.3f over %zu splits\n", report.cv_accuracy_mean,
                  report.cv_accuracy_std, report.per_split_accuracy.size());
    } else if (active == plot) {
      zgf::run_plot(cfg);
      std::printf("wrote %s\n", (cfg.output_dir / "landscapes.svg").string().c_str());
    }
  } catch (const zgf::ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const zgf::DatasetError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const zgf::SelectionError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 4;
  } catch (const zgf::OutputExistsError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 5;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
