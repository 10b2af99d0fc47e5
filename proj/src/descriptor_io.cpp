#include "zgf/descriptor_io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace fs = std::filesystem;

namespace zgf {

namespace {

// Shortest round-trip float formatting, deterministic across runs.
std::string fmt(double v) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

void store_descriptor(const Descriptor& d, const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  os.write("ZLD1", 4);
  std::uint32_t len = std::uint32_t(d.vector.size());
  unsigned char b[4] = {static_cast<unsigned char>(len), static_cast<unsigned char>(len >> 8),
                        static_cast<unsigned char>(len >> 16),
                        static_cast<unsigned char>(len >> 24)};
  os.write(reinterpret_cast<const char*>(b), 4);
  for (double v : d.vector) {
    float f = float(v);
    os.write(reinterpret_cast<const char*>(&f), 4);
  }
  nlohmann::ordered_json j{{"mouse_id", d.mouse_id},
                           {"video_id", d.video_id},
                           {"video_type", d.video_type}};
  std::ofstream js(path.string() + ".json");
  js << j.dump(2) << '\n';
}

Descriptor load_descriptor(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "ZLD1", 4) != 0)
    throw std::runtime_error("bad magic in " + path.string());
  unsigned char b[4];
  is.read(reinterpret_cast<char*>(b), 4);
  if (!is) throw std::runtime_error("descriptor file truncated: " + path.string());
  std::uint32_t len = std::uint32_t(b[0]) | std::uint32_t(b[1]) << 8 |
                      std::uint32_t(b[2]) << 16 | std::uint32_t(b[3]) << 24;
  Descriptor d;
  d.vector.resize(len);
  for (std::uint32_t i = 0; i < len; ++i) {
    float f;
    is.read(reinterpret_cast<char*>(&f), 4);
    if (!is) throw std::runtime_error("descriptor file truncated: " + path.string());
    d.vector[i] = f;
  }
  std::ifstream js(path.string() + ".json");
  if (js) {
    nlohmann::json j;
    js >> j;
    d.mouse_id = j.value("mouse_id", "");
    d.video_id = j.value("video_id", "");
    d.video_type = j.value("video_type", "");
  }
  return d;
}

void store_pooled_csv(const std::vector<Descriptor>& descriptors, const fs::path& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot write " + path.string());
  std::size_t D = descriptors.empty() ? 0 : descriptors[0].vector.size();
  os << "trial_id,video_id,video_type,mouse_id";
  for (std::size_t i = 0; i < D; ++i) os << ",v" << i;
  os << '\n';
  for (std::size_t t = 0; t < descriptors.size(); ++t) {
    const auto& d = descriptors[t];
    os << t << ',' << d.video_id << ',' << d.video_type << ',' << d.mouse_id;
    for (double v : d.vector) os << ',' << fmt(v);
    os << '\n';
  }
}

std::vector<Descriptor> load_pooled_csv(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot open " + path.string());
  std::string line;
  if (!std::getline(is, line) || line.rfind("trial_id,video_id,video_type,mouse_id", 0) != 0)
    throw std::runtime_error("bad pooled CSV header: " + path.string());
  std::vector<Descriptor> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::string cell;
    Descriptor d;
    std::getline(ss, cell, ',');  // trial_id, positional
    std::getline(ss, d.video_id, ',');
    std::getline(ss, d.video_type, ',');
    std::getline(ss, d.mouse_id, ',');
    while (std::getline(ss, cell, ',')) d.vector.push_back(std::stod(cell));
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace zgf
