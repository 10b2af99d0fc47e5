#include "zgf/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "zgf/descriptor_io.hpp"
#include "zgf/grid_io.hpp"
#include "zgf/rng.hpp"
#include "zgf/svg.hpp"
#include "zgf/synth.hpp"
#include "zgf/zigzag.hpp"
#include "zgf/zigzag_grid.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fs = std::filesystem;

namespace zgf {

namespace {

const char* control_name(ControlKind k) {
  switch (k) {
    case ControlKind::frame_shuffle: return "frame_shuffle";
    case ControlKind::grid_scramble: return "grid_scramble";
    default: return "none";
  }
}

ControlKind control_from_name(const std::string& s) {
  if (s == "none") return ControlKind::none;
  if (s == "frame_shuffle") return ControlKind::frame_shuffle;
  if (s == "grid_scramble") return ControlKind::grid_scramble;
  throw ConfigError("unknown control kind: " + s);
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << text;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

}  // namespace

std::string config_to_json(const RunConfig& cfg) {
  nlohmann::ordered_json j;
  j["dataset_root"] = cfg.dataset_root.string();
  j["output_dir"] = cfg.output_dir.string();
  j["n_grid"] = cfg.n_grid;
  j["threshold"] = cfg.threshold;
  j["R"] = cfg.R;
  j["K"] = cfg.K;
  j["Z"] = cfg.Z;
  j["normalize_order"] = cfg.order == NormalizeOrder::appendix ? "appendix" : "maintext";
  j["engine"] = cfg.engine == Engine::grid ? "grid" : "reference";
  j["control"] = {{"kind", control_name(cfg.control.kind)}, {"seed", cfg.control.seed}};
  j["runs"] = cfg.runs;
  j["per_class"] = cfg.per_class;
  j["splits"] = cfg.splits;
  j["test_frac"] = cfg.test_frac;
  j["l2"] = cfg.l2;
  j["seed"] = cfg.seed;
  j["cluster_mouse"] = cfg.cluster_mouse;
  j["cluster_video_type"] = cfg.cluster_video_type;
  j["synth_classes"] = cfg.synth_classes;
  j["synth_repeats"] = cfg.synth_repeats;
  j["synth_T"] = cfg.synth_T;
  j["synth_noise"] = cfg.synth_noise;
  j["workers"] = cfg.workers;
  return j.dump(2) + "\n";
}

RunConfig config_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  RunConfig cfg;
  try {
    cfg.dataset_root = j.value("dataset_root", std::string());
    cfg.output_dir = j.value("output_dir", std::string());
    cfg.n_grid = j.value("n_grid", cfg.n_grid);
    cfg.threshold = j.value("threshold", cfg.threshold);
    cfg.R = j.value("R", cfg.R);
    cfg.K = j.value("K", cfg.K);
    cfg.Z = j.value("Z", cfg.Z);
    std::string order = j.value("normalize_order", std::string("appendix"));
    if (order != "appendix" && order != "maintext")
      throw ConfigError("unknown normalize_order: " + order);
    cfg.order = order == "appendix" ? NormalizeOrder::appendix : NormalizeOrder::maintext;
    std::string engine = j.value("engine", std::string("grid"));
    if (engine != "grid" && engine != "reference")
      throw ConfigError("unknown engine: " + engine);
    cfg.engine = engine == "grid" ? Engine::grid : Engine::reference;
    if (j.contains("control")) {
      cfg.control.kind = control_from_name(j["control"].value("kind", std::string("none")));
      cfg.control.seed = j["control"].value("seed", std::uint64_t(0));
    }
    cfg.runs = j.value("runs", cfg.runs);
    cfg.per_class = j.value("per_class", cfg.per_class);
    cfg.splits = j.value("splits", cfg.splits);
    cfg.test_frac = j.value("test_frac", cfg.test_frac);
    cfg.l2 = j.value("l2", cfg.l2);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.cluster_mouse = j.value("cluster_mouse", cfg.cluster_mouse);
    cfg.cluster_video_type = j.value("cluster_video_type", cfg.cluster_video_type);
    cfg.synth_classes = j.value("synth_classes", cfg.synth_classes);
    cfg.synth_repeats = j.value("synth_repeats", cfg.synth_repeats);
    cfg.synth_T = j.value("synth_T", cfg.synth_T);
    cfg.synth_noise = j.value("synth_noise", cfg.synth_noise);
    cfg.workers = j.value("workers", cfg.workers);
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot read config " + path.string());
  std::stringstream ss;
  ss << is.rdbuf();
  return config_from_json(ss.str());
}

int effective_workers(int configured) {
  if (const char* env = std::getenv("ZGF_WORKERS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1) return int(v);
  }
  return std::max(configured, 1);
}

std::vector<BitMask> field_masks(const NormalizedField& field, double threshold) {
  std::vector<BitMask> masks;
  masks.reserve(std::size_t(field.T));
  for (int t = 0; t < field.T; ++t)
    masks.push_back(superlevel_mask(field.frame(t), field.n, threshold));
  return masks;
}

LandscapeVector plane_landscape(const ActivityGrid& grid, const RunConfig& cfg,
                                const ControlSpec& derived_control) {
  NormalizedField field = apply_control(normalize(grid, cfg.order), derived_control);
  auto masks = field_masks(field, cfg.threshold);

  std::vector<PersistenceInterval> bars;
  if (cfg.engine == Engine::grid) {
    bars = compute_zigzag_frames(masks);
  } else {
    std::vector<SimplicialComplex> frames;
    frames.reserve(masks.size());
    for (const auto& m : masks) frames.push_back(closure_adapter(cubical_cells(m)));
    bars = compute_zigzag(encode(build_sequence(frames)));
  }
  int L = 2 * grid.T - 1;
  return landscape(select_dimension(bars, 1), L, cfg.R, cfg.K);
}

DescriptorRun run_descriptors(const RunConfig& cfg) {
  if (cfg.dataset_root.empty() || !fs::exists(cfg.dataset_root))
    throw DatasetError("dataset root not found: " + cfg.dataset_root.string());
  auto trials = scan_dataset(cfg.dataset_root);
  if (trials.empty()) throw DatasetError("no trials under " + cfg.dataset_root.string());
  if (cfg.output_dir.empty()) throw ConfigError("output_dir not set");

  DescriptorRun out;
  std::vector<const TrialRef*> complete;
  for (const auto& t : trials) {
    bool ok = int(t.planes.size()) >= cfg.Z;
    for (int p = 0; ok && p < cfg.Z; ++p)
      ok = std::find(t.planes.begin(), t.planes.end(), p) != t.planes.end();
    if (!ok) {
      out.warnings.push_back("trial " + t.mouse_id + "/" + t.video_id +
                             " omitted: missing plane files");
      continue;
    }
    complete.push_back(&t);
  }
  if (complete.empty()) throw DatasetError("no trial has all " + std::to_string(cfg.Z) + " planes");

  struct Job {
    const TrialRef* trial;
    int plane;
  };
  std::vector<Job> jobs;
  for (const auto* t : complete)
    for (int p = 0; p < cfg.Z; ++p) jobs.push_back({t, p});

  std::vector<LandscapeVector> results(jobs.size());
  std::vector<std::string> errors(jobs.size());
  out.plane_seconds.assign(jobs.size(), 0.0);

  const int workers = effective_workers(cfg.workers);
  double t0 = now_seconds();
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(workers) if (workers > 1)
#endif
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& job = jobs[i];
    double js = now_seconds();
    try {
      ActivityGrid grid =
          load_grid(grid_path(cfg.dataset_root, job.trial->mouse_id, job.plane,
                              job.trial->video_id));
      ControlSpec derived = cfg.control;
      if (derived.kind == ControlKind::frame_shuffle) {
        derived.seed = mix_seed(cfg.control.seed, job.trial->video_id);
      } else if (derived.kind == ControlKind::grid_scramble) {
        derived.seed =
            mix_seed(mix_seed(cfg.control.seed, job.trial->video_id), std::uint64_t(job.plane));
      }
      results[i] = plane_landscape(grid, cfg, derived);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
    out.plane_seconds[i] = now_seconds() - js;
  }
  out.total_seconds = now_seconds() - t0;

  fs::create_directories(cfg.output_dir / "planes");
  fs::create_directories(cfg.output_dir / "trials");

  std::size_t ji = 0;
  for (const auto* t : complete) {
    std::vector<LandscapeVector> per_plane;
    std::string fail;
    for (int p = 0; p < cfg.Z; ++p, ++ji) {
      if (!errors[ji].empty()) {
        fail = "plane " + std::to_string(p) + ": " + errors[ji];
        continue;
      }
      per_plane.push_back(results[ji]);
      Descriptor pd;
      pd.mouse_id = t->mouse_id;
      pd.video_id = "g" + std::to_string(t->repeat_group);
      pd.video_type = t->video_type;
      pd.vector = results[ji].values;
      store_descriptor(pd, cfg.output_dir / "planes" /
                               (t->mouse_id + "_" + t->video_id + "_p" + std::to_string(p) +
                                ".zld"));
    }
    if (!fail.empty()) {
      out.warnings.push_back("trial " + t->mouse_id + "/" + t->video_id + " omitted: " + fail);
      continue;
    }
    Descriptor d = assemble_descriptor(per_plane, cfg.Z);
    d.mouse_id = t->mouse_id;
    d.video_id = "g" + std::to_string(t->repeat_group);
    d.video_type = t->video_type;
    store_descriptor(d, cfg.output_dir / "trials" / (t->mouse_id + "_" + t->video_id + ".zld"));
    out.descriptors.push_back(std::move(d));
  }
  if (out.descriptors.empty()) throw DatasetError("no trial produced a descriptor");

  store_pooled_csv(out.descriptors, cfg.output_dir / "pooled.csv");
  write_text(cfg.output_dir / "run_config.json", config_to_json(cfg));

  nlohmann::ordered_json report;
  report["trials"] = out.descriptors.size();
  report["planes_per_trial"] = cfg.Z;
  report["warnings"] = out.warnings;
  write_text(cfg.output_dir / "report.json", report.dump(2) + "\n");

  // Timings live in their own file so the data artifacts stay byte-stable.
  nlohmann::ordered_json timing;
  timing["total_seconds"] = out.total_seconds;
  timing["workers"] = workers;
  timing["plane_seconds"] = out.plane_seconds;
  write_text(cfg.output_dir / "timings.json", timing.dump(2) + "\n");
  return out;
}

namespace {

std::vector<Descriptor> load_store(const RunConfig& cfg) {
  fs::path pooled = cfg.output_dir / "pooled.csv";
  if (!fs::exists(pooled))
    throw DatasetError("descriptor store missing: " + pooled.string());
  return load_pooled_csv(pooled);
}

}  // namespace

ClusterReport run_cluster(const RunConfig& cfg) {
  auto descriptors = load_store(cfg);
  std::string mouse = cfg.cluster_mouse.empty() ? descriptors[0].mouse_id : cfg.cluster_mouse;
  std::string vtype =
      cfg.cluster_video_type.empty() ? descriptors[0].video_type : cfg.cluster_video_type;
  bool any = false;
  for (const auto& d : descriptors)
    any = any || (d.mouse_id == mouse && d.video_type == vtype);
  if (!any)
    throw SelectionError("no descriptors match mouse '" + mouse + "' video_type '" + vtype + "'");

  ClusterReport report = protocol_A(descriptors, mouse, vtype, cfg.runs, cfg.per_class, cfg.seed);
  write_text(cfg.output_dir / "cluster_report.json", cluster_report_json(report) + "\n");

  std::ostringstream csv;
  csv << "metric,mean,std\n";
  csv << "ari," << report.ari_mean << ',' << report.ari_std << '\n';
  csv << "ami," << report.ami_mean << ',' << report.ami_std << '\n';
  csv << "accuracy," << report.acc_mean << ',' << report.acc_std << '\n';
  write_text(cfg.output_dir / "cluster_metrics.csv", csv.str());

  write_text(cfg.output_dir / "cluster_metrics.svg",
             svg_bar_chart({"ari", "ami", "accuracy"},
                           {report.ari_mean, report.ami_mean, report.acc_mean},
                           "Clustering metrics (" + mouse + ", " + vtype + ")"));
  return report;
}

ClassifyReport run_classify(const RunConfig& cfg, ClassifyTarget target) {
  auto descriptors = load_store(cfg);
  ClassifyReport report =
      protocol_BC(descriptors, target, cfg.splits, cfg.test_frac, cfg.seed, cfg.l2);
  std::string stem =
      target == ClassifyTarget::video_type ? "classify_video_type" : "classify_mouse";
  write_text(cfg.output_dir / (stem + "_report.json"), classify_report_json(report) + "\n");

  std::ostringstream csv;
  csv << "class,f1_first_split,support_first_split\n";
  for (std::size_t c = 0; c < report.class_names.size(); ++c)
    csv << report.class_names[c] << ',' << report.f1[c] << ',' << report.support[c] << '\n';
  write_text(cfg.output_dir / (stem + "_metrics.csv"), csv.str());

  write_text(cfg.output_dir / (stem + "_confusion.svg"),
             svg_heatmap(report.confusion, report.class_names, "Confusion (" + stem + ")"));
  return report;
}

void run_synth(const RunConfig& cfg, bool force) {
  if (cfg.dataset_root.empty()) throw ConfigError("dataset_root not set");
  if (fs::exists(cfg.dataset_root) && !fs::is_empty(cfg.dataset_root)) {
    if (!force)
      throw OutputExistsError("output exists (use --force): " + cfg.dataset_root.string());
    fs::remove_all(cfg.dataset_root);
  }
  fs::create_directories(cfg.dataset_root);

  const int n = cfg.n_grid, T = cfg.synth_T, Z = cfg.Z;
  double mid = 0.5 * (n - 1);
  double rin = std::max(2.0, 0.12 * n), rout = std::max(rin + 1.6, 0.22 * n);
  // Equal duty cycles so only the temporal arrangement separates the classes;
  // the frame-shuffle control then removes the separating signal.
  std::vector<SynthClassSpec> classes;
  for (int c = 0; c < cfg.synth_classes; ++c) {
    int on = (c % 2 == 0) ? 6 : 3, off = on;
    int phase = 2 * c;
    double row0 = mid + (c % 3 == 1 ? 0.08 * n : c % 3 == 2 ? -0.08 * n : 0.0);
    classes.push_back(make_ring_class("c" + std::to_string(c), n, T, Z, row0, mid, 0.0, 0.0,
                                      rin, rout, on, off, phase, cfg.synth_noise));
  }
  gen_dataset(classes, cfg.synth_repeats, cfg.seed, cfg.dataset_root);
  write_text(cfg.dataset_root / "run_config.json", config_to_json(cfg));
}

void run_plot(const RunConfig& cfg) {
  auto descriptors = load_store(cfg);
  std::vector<SvgSeries> series;
  for (const auto& d : descriptors) {
    SvgSeries s;
    s.name = d.mouse_id + "/" + d.video_id;
    // First landscape layer of the first plane.
    std::size_t R = std::size_t(cfg.R);
    for (std::size_t i = 0; i < R && i < d.vector.size(); ++i) s.values.push_back(d.vector[i]);
    series.push_back(std::move(s));
  }
  write_text(cfg.output_dir / "landscapes.svg",
             svg_line_chart(series, "Landscape layer 1, plane 0"));
}

}  // namespace zgf
