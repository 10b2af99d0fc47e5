#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "zgf/grid.hpp"
#include "zgf/grid_io.hpp"
#include "zgf/rasterize.hpp"
#include "zgf/rng.hpp"

namespace fs = std::filesystem;
using namespace zgf;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("zgf_test_" + std::to_string(std::rand()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

ActivityGrid grid_from(int n, int T, std::vector<float> vals) {
  ActivityGrid g(n, T);
  g.values = std::move(vals);
  return g;
}

}  // namespace

TEST_CASE("normalize per-pixel delta") {
  SUBCASE("constant trace normalizes to zero") {
    auto g = grid_from(2, 3, {2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2});
    auto f = normalize(g);
    for (double v : f.values) CHECK(v == doctest::Approx(0.0));
  }
  SUBCASE("[0,4] gives [-1,1]") {
    ActivityGrid g(2, 2);
    g.at(0, 0, 0) = 0;
    g.at(0, 0, 1) = 4;
    auto f = normalize(g);
    CHECK(f.at(0, 0, 0) == doctest::Approx(-1.0));
    CHECK(f.at(0, 0, 1) == doctest::Approx(1.0));
  }
  SUBCASE("all-zero trace goes through the epsilon guard") {
    ActivityGrid g(2, 3);
    auto f = normalize(g);
    for (double v : f.values) CHECK(v == 0.0);
  }
  SUBCASE("idempotence on the normalized output") {
    Rng rng(5);
    ActivityGrid g(3, 4);
    for (auto& v : g.values) v = float(1.0 + rng.uniform());
    auto f1 = normalize(g);
    ActivityGrid g2(3, 4);
    for (std::size_t i = 0; i < f1.values.size(); ++i) g2.values[i] = float(f1.values[i]);
    auto f2 = normalize(g2);
    // Per-pixel means of a normalized field are 0, so the second pass only
    // triggers the epsilon guard.
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) {
        double mean = 0;
        for (int t = 0; t < 4; ++t) mean += f2.at(r, c, t);
        CHECK(std::fabs(mean / 4) < 1e-6);
      }
  }
  SUBCASE("maintext order passes pre-normalized values through") {
    auto g = grid_from(2, 2, {1, -1, 0.5f, -0.5f, 0, 0, 0, 0});
    auto f = normalize(g, NormalizeOrder::maintext);
    for (std::size_t i = 0; i < g.values.size(); ++i)
      CHECK(f.values[i] == doctest::Approx(double(g.values[i])));
  }
}

TEST_CASE("apply_control") {
  Rng rng(9);
  NormalizedField field(4, 6);
  for (auto& v : field.values) v = rng.uniform() - 0.5;

  SUBCASE("none is identity") {
    auto out = apply_control(field, {ControlKind::none, 1});
    CHECK(out.values == field.values);
  }
  SUBCASE("frame_shuffle reorders frames by the derived permutation") {
    ControlSpec spec{ControlKind::frame_shuffle, 123};
    auto out = apply_control(field, spec);
    auto pi = make_permutation(6, 123);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int t = 0; t < 6; ++t) CHECK(out.at(r, c, t) == field.at(r, c, int(pi[t])));
    // Per-pixel time multiset is preserved.
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        std::vector<double> a, b;
        for (int t = 0; t < 6; ++t) {
          a.push_back(field.at(r, c, t));
          b.push_back(out.at(r, c, t));
        }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        CHECK(a == b);
      }
  }
  SUBCASE("grid_scramble preserves the per-frame pixel multiset") {
    auto out = apply_control(field, {ControlKind::grid_scramble, 7});
    for (int t = 0; t < 6; ++t) {
      std::vector<double> a, b;
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          a.push_back(field.at(r, c, t));
          b.push_back(out.at(r, c, t));
        }
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
    }
  }
  SUBCASE("inverse permutation recovers the field") {
    ControlSpec spec{ControlKind::frame_shuffle, 55};
    auto out = apply_control(field, spec);
    auto pi = make_permutation(6, 55);
    NormalizedField back(4, 6);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        for (int t = 0; t < 6; ++t) back.at(r, c, int(pi[t])) = out.at(r, c, t);
    CHECK(back.values == field.values);
  }
}

TEST_CASE("rasterize") {
  SUBCASE("constant corner samples give a constant field") {
    std::vector<NeuronSample> samples;
    int id = 0;
    for (double x : {0.0, 1.0})
      for (double y : {0.0, 1.0}) samples.push_back({id++, x, y, {5.0, 5.0}});
    for (auto method : {InterpMethod::nearest, InterpMethod::linear, InterpMethod::cubic}) {
      auto g = rasterize(samples, 4, method);
      for (float v : g.values) CHECK(v == doctest::Approx(5.0));
    }
  }
  SUBCASE("too few or collinear points error for linear") {
    std::vector<NeuronSample> two{{0, 0.0, 0.0, {1.0}}, {1, 1.0, 1.0, {2.0}}};
    CHECK_THROWS(rasterize(two, 4, InterpMethod::linear));
    std::vector<NeuronSample> line{
        {0, 0.1, 0.1, {1.0}}, {1, 0.5, 0.5, {2.0}}, {2, 0.9, 0.9, {3.0}}};
    CHECK_THROWS(rasterize(line, 4, InterpMethod::linear));
    CHECK_THROWS(rasterize(line, 4, InterpMethod::cubic));
  }
  SUBCASE("linear interpolation reproduces affine functions") {
    std::vector<NeuronSample> samples;
    int id = 0;
    for (int i = 0; i <= 10; ++i)
      for (int j = 0; j <= 10; ++j) {
        double x = i / 10.0, y = j / 10.0;
        samples.push_back({id++, x, y, {x + y}});
      }
    auto g = rasterize(samples, 8, InterpMethod::linear);
    for (int r = 0; r < 8; ++r)
      for (int c = 0; c < 8; ++c) {
        double x = c / 7.0, y = r / 7.0;
        CHECK(std::fabs(double(g.at(r, c, 0)) - (x + y)) <= 1e-6);
      }
  }
  SUBCASE("grid points on sample sites reproduce sample values") {
    std::vector<NeuronSample> samples;
    int id = 0;
    for (int i = 0; i <= 2; ++i)
      for (int j = 0; j <= 2; ++j)
        samples.push_back({id++, i / 2.0, j / 2.0, {double(id)}});
    auto g = rasterize(samples, 3, InterpMethod::nearest);
    for (const auto& s : samples) {
      int c = int(std::lround(s.x * 2)), r = int(std::lround(s.y * 2));
      CHECK(double(g.at(r, c, 0)) == doctest::Approx(s.trace[0]));
    }
  }
}

TEST_CASE("grid io round trips") {
  TempDir tmp;
  Rng rng(3);
  ActivityGrid g(3, 4);
  for (auto& v : g.values) v = float(rng.uniform());

  SUBCASE("binary round trip is bit exact") {
    store_grid(g, tmp.path / "a.zgf");
    auto back = load_grid(tmp.path / "a.zgf");
    CHECK(back.n == 3);
    CHECK(back.T == 4);
    CHECK(back.values == g.values);
  }
  SUBCASE("truncated file is a format error") {
    store_grid(g, tmp.path / "b.zgf");
    fs::resize_file(tmp.path / "b.zgf", 20);
    CHECK_THROWS(load_grid(tmp.path / "b.zgf"));
  }
  SUBCASE("bad magic is a format error") {
    std::ofstream os(tmp.path / "c.zgf", std::ios::binary);
    os << "NOPE" << std::string(60, '\0');
    os.close();
    CHECK_THROWS(load_grid(tmp.path / "c.zgf"));
  }
  SUBCASE("hand-written 2x2x2 CSV") {
    std::ofstream os(tmp.path / "d.csv");
    os << "1,2,3,4\n5,6,7,8\n";
    os.close();
    auto back = load_grid_csv(tmp.path / "d.csv");
    CHECK(back.n == 2);
    CHECK(back.T == 2);
    CHECK(back.at(0, 0, 0) == 1.0f);
    CHECK(back.at(0, 1, 0) == 2.0f);
    CHECK(back.at(1, 0, 1) == 7.0f);
    CHECK(back.at(1, 1, 1) == 8.0f);
  }
  SUBCASE("grid CSV round trip") {
    store_grid_csv(g, tmp.path / "e.csv");
    auto back = load_grid_csv(tmp.path / "e.csv");
    REQUIRE(back.values.size() == g.values.size());
    for (std::size_t i = 0; i < g.values.size(); ++i)
      CHECK(back.values[i] == doctest::Approx(g.values[i]));
  }
  SUBCASE("scattered sample CSV round trip") {
    std::vector<NeuronSample> samples{{1, 0.25, 0.75, {1.0, 2.0}}, {2, 0.5, 0.5, {3.0, 4.0}}};
    store_samples_csv(samples, tmp.path / "f.csv");
    auto back = load_samples_csv(tmp.path / "f.csv");
    REQUIRE(back.size() == 2);
    CHECK(back[0].neuron_id == 1);
    CHECK(back[0].x == doctest::Approx(0.25));
    CHECK(back[1].trace == std::vector<double>{3.0, 4.0});
  }
}

TEST_CASE("dataset layout scan") {
  TempDir tmp;
  ActivityGrid g(3, 3);
  for (auto& v : g.values) v = 1.0f;
  MouseMeta meta;
  meta["vidA"] = {"nat", 0};
  meta["vidB"] = {"nat", 1};
  store_meta(meta, [&] {
    fs::create_directories(tmp.path / "m1");
    return tmp.path / "m1" / "meta.json";
  }());
  for (int plane : {0, 1}) {
    for (const char* vid : {"vidA", "vidB"}) {
      auto p = grid_path(tmp.path, "m1", plane, vid);
      fs::create_directories(p.parent_path());
      store_grid(g, p);
    }
  }

  auto trials = scan_dataset(tmp.path);
  REQUIRE(trials.size() == 2);
  CHECK(trials[0].video_id == "vidA");
  CHECK(trials[0].video_type == "nat");
  CHECK(trials[0].repeat_group == 0);
  CHECK(trials[0].planes == std::vector<int>{0, 1});
  CHECK(trials[1].video_id == "vidB");
  CHECK(trials[1].repeat_group == 1);

  SUBCASE("meta round trip") {
    auto back = load_meta(tmp.path / "m1" / "meta.json");
    CHECK(back.at("vidA").video_type == "nat");
    CHECK(back.at("vidB").repeat_group == 1);
  }
}
