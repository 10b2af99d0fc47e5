#include "zgf/grid_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fs = std::filesystem;

namespace zgf {

namespace {

void write_u32(std::ostream& os, std::uint32_t v) {
  unsigned char b[4] = {static_cast<unsigned char>(v), static_cast<unsigned char>(v >> 8),
                        static_cast<unsigned char>(v >> 16),
                        static_cast<unsigned char>(v >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::uint32_t read_u32(std::istream& is) {
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw std::runtime_error("grid file truncated");
  return std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 | std::uint32_t(b[2]) << 16 |
         std::uint32_t(b[3]) << 24;
}

}  // namespace

void store_grid(const ActivityGrid& grid, const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.write("ZGF1", 4);
  write_u32(os, std::uint32_t(grid.n));
  write_u32(os, std::uint32_t(grid.n));
  write_u32(os, std::uint32_t(grid.T));
  static_assert(sizeof(float) == 4);
  // Values are already (row, col, frame) with frame fastest; assumes a
  // little-endian host, as does the rest of this file format code.
  os.write(reinterpret_cast<const char*>(grid.values.data()),
           std::streamsize(grid.values.size() * 4));
  if (!os) throw std::runtime_error("write failed: " + path.string());
}

ActivityGrid load_grid(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "ZGF1", 4) != 0)
    throw std::runtime_error("bad magic in " + path.string());
  std::uint32_t rows = read_u32(is), cols = read_u32(is), T = read_u32(is);
  if (rows != cols || rows < 2 || T < 1)
    throw std::runtime_error("bad dimensions in " + path.string());
  ActivityGrid grid{int(rows), int(T)};
  is.read(reinterpret_cast<char*>(grid.values.data()), std::streamsize(grid.values.size() * 4));
  if (!is) throw std::runtime_error("grid file truncated: " + path.string());
  return grid;
}

void store_grid_csv(const ActivityGrid& grid, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.precision(9);
  for (int t = 0; t < grid.T; ++t) {
    for (int r = 0; r < grid.n; ++r)
      for (int c = 0; c < grid.n; ++c) {
        if (r || c) os << ',';
        os << grid.at(r, c, t);
      }
    os << '\n';
  }
}

ActivityGrid load_grid_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::vector<std::vector<float>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<float> vals;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) vals.push_back(std::stof(cell));
    rows.push_back(std::move(vals));
  }
  if (rows.empty()) throw std::runtime_error("empty grid CSV: " + path.string());
  const std::size_t npix = rows[0].size();
  int n = int(std::lround(std::sqrt(double(npix))));
  if (std::size_t(n) * n != npix)
    throw std::runtime_error("grid CSV row is not a square pixel count: " + path.string());
  ActivityGrid grid(n, int(rows.size()));
  for (int t = 0; t < grid.T; ++t) {
    if (rows[t].size() != npix)
      throw std::runtime_error("ragged grid CSV: " + path.string());
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) grid.at(r, c, t) = rows[t][std::size_t(r) * n + c];
  }
  return grid;
}

std::vector<NeuronSample> load_samples_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.rfind("neuron_id,x,y,", 0) != 0)
    throw std::runtime_error("bad scattered-sample CSV header: " + path.string());
  std::vector<NeuronSample> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    NeuronSample s;
    std::getline(ss, cell, ',');
    s.neuron_id = std::stoi(cell);
    std::getline(ss, cell, ',');
    s.x = std::stod(cell);
    std::getline(ss, cell, ',');
    s.y = std::stod(cell);
    while (std::getline(ss, cell, ',')) s.trace.push_back(std::stod(cell));
    out.push_back(std::move(s));
  }
  return out;
}

void store_samples_csv(const std::vector<NeuronSample>& samples, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.precision(17);
  std::size_t T = samples.empty() ? 0 : samples[0].trace.size();
  os << "neuron_id,x,y";
  for (std::size_t t = 0; t < T; ++t) os << ",f" << t;
  os << '\n';
  for (const auto& s : samples) {
    os << s.neuron_id << ',' << s.x << ',' << s.y;
    for (double v : s.trace) os << ',' << v;
    os << '\n';
  }
}

void store_meta(const MouseMeta& meta, const fs::path& path) {
  nlohmann::ordered_json j;
  for (const auto& [video, m] : meta)
    j["videos"][video] = {{"video_type", m.video_type}, {"repeat_group", m.repeat_group}};
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os << j.dump(2) << '\n';
}

MouseMeta load_meta(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  nlohmann::json j;
  is >> j;
  MouseMeta meta;
  for (auto& [video, m] : j.at("videos").items())
    meta[video] = {m.at("video_type").get<std::string>(), m.at("repeat_group").get<int>()};
  return meta;
}

fs::path grid_path(const fs::path& root, const std::string& mouse, int plane,
                   const std::string& video) {
  return root / mouse / std::to_string(plane) / (video + ".zgf");
}

std::vector<TrialRef> scan_dataset(const fs::path& root) {
  std::vector<TrialRef> out;
  if (!fs::is_directory(root)) return out;
  std::vector<fs::path> mice;
  for (const auto& e : fs::directory_iterator(root))
    if (e.is_directory()) mice.push_back(e.path());
  std::sort(mice.begin(), mice.end());
  for (const auto& mouse_dir : mice) {
    const std::string mouse = mouse_dir.filename().string();
    MouseMeta meta;
    if (fs::exists(mouse_dir / "meta.json")) meta = load_meta(mouse_dir / "meta.json");
    std::map<std::string, TrialRef> trials;
    for (const auto& plane_entry : fs::directory_iterator(mouse_dir)) {
      if (!plane_entry.is_directory()) continue;
      int plane;
      try {
        plane = std::stoi(plane_entry.path().filename().string());
      } catch (...) {
        continue;
      }
      for (const auto& f : fs::directory_iterator(plane_entry.path())) {
        if (f.path().extension() != ".zgf") continue;
        const std::string video = f.path().stem().string();
        auto& tr = trials[video];
        tr.mouse_id = mouse;
        tr.video_id = video;
        tr.planes.push_back(plane);
        auto it = meta.find(video);
        if (it != meta.end()) {
          tr.video_type = it->second.video_type;
          tr.repeat_group = it->second.repeat_group;
        }
      }
    }
    for (auto& [video, tr] : trials) {
      std::sort(tr.planes.begin(), tr.planes.end());
      out.push_back(std::move(tr));
    }
  }
  return out;
}

}  // namespace zgf
