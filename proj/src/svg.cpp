#include "zgf/svg.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace zgf {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};
constexpr int kPaletteSize = 10;

std::string fmt(double v) {
  if (!std::isfinite(v)) return "0";
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  return std::string(buf, res.ptr);
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void open_svg(std::ostringstream& os, int w, int h, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
     << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << w / 2 << "\" y=\"18\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"14\">" << escape(title) << "</text>\n";
}

}  // namespace

std::string svg_line_chart(const std::vector<SvgSeries>& series, const std::string& title,
                           int width, int height) {
  std::ostringstream os;
  open_svg(os, width, height, title);
  const double left = 50, right = width - 20, top = 32, bottom = height - 30;

  double ymin = 0, ymax = 1e-12;
  std::size_t nmax = 2;
  for (const auto& s : series)
    for (double v : s.values) {
      ymax = std::max(ymax, v);
      ymin = std::min(ymin, v);
    }
  for (const auto& s : series) nmax = std::max(nmax, s.values.size());

  auto xmap = [&](std::size_t i) {
    return left + (right - left) * double(i) / double(nmax - 1);
  };
  auto ymap = [&](double v) { return bottom - (bottom - top) * (v - ymin) / (ymax - ymin); };

  os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(right)
     << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
     << "\" y2=\"" << fmt(bottom) << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(ymap(ymax) + 4)
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(ymax)
     << "</text>\n";
  os << "<text x=\"" << fmt(left - 6) << "\" y=\"" << fmt(bottom + 4)
     << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fmt(ymin)
     << "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    if (s.values.size() < 2) continue;
    os << "<polyline fill=\"none\" stroke=\"" << kPalette[si % kPaletteSize]
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (i) os << ' ';
      os << fmt(xmap(i)) << ',' << fmt(ymap(s.values[i]));
    }
    os << "\"/>\n";
  }
  // Legend, capped so large batches stay readable.
  std::size_t legend = std::min<std::size_t>(series.size(), 10);
  for (std::size_t si = 0; si < legend; ++si) {
    double y = top + 14 * double(si);
    os << "<rect x=\"" << fmt(right - 110) << "\" y=\"" << fmt(y) << "\" width=\"10\" "
       << "height=\"10\" fill=\"" << kPalette[si % kPaletteSize] << "\"/>\n";
    os << "<text x=\"" << fmt(right - 96) << "\" y=\"" << fmt(y + 9)
       << "\" font-family=\"sans-serif\" font-size=\"10\">" << escape(series[si].name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_bar_chart(const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& title, int width,
                          int height) {
  std::ostringstream os;
  open_svg(os, width, height, title);
  const double left = 50, right = width - 20, top = 32, bottom = height - 40;
  double ymax = 1e-12, ymin = 0;
  for (double v : values) {
    ymax = std::max(ymax, v);
    ymin = std::min(ymin, v);
  }
  auto ymap = [&](double v) { return bottom - (bottom - top) * (v - ymin) / (ymax - ymin); };
  double slot = (right - left) / double(std::max<std::size_t>(values.size(), 1));

  os << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(ymap(0)) << "\" x2=\"" << fmt(right)
     << "\" y2=\"" << fmt(ymap(0)) << "\" stroke=\"black\"/>\n";
  for (std::size_t i = 0; i < values.size(); ++i) {
    double x = left + slot * double(i) + slot * 0.15;
    double y0 = ymap(0), y1 = ymap(values[i]);
    os << "<rect x=\"" << fmt(x) << "\" y=\"" << fmt(std::min(y0, y1)) << "\" width=\""
       << fmt(slot * 0.7) << "\" height=\"" << fmt(std::fabs(y0 - y1)) << "\" fill=\""
       << kPalette[i % kPaletteSize] << "\"/>\n";
    os << "<text x=\"" << fmt(x + slot * 0.35) << "\" y=\"" << fmt(bottom + 14)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
       << escape(i < labels.size() ? labels[i] : "") << "</text>\n";
    os << "<text x=\"" << fmt(x + slot * 0.35) << "\" y=\"" << fmt(std::min(y0, y1) - 4)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">"
       << fmt(values[i]) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::vector<std::vector<int>>& counts,
                        const std::vector<std::string>& labels, const std::string& title,
                        int cell) {
  const int n = int(counts.size());
  const int left = 70, top = 40;
  int width = left + n * cell + 20, height = top + n * cell + 40;
  std::ostringstream os;
  open_svg(os, width, height, title);
  int cmax = 1;
  for (const auto& row : counts)
    for (int v : row) cmax = std::max(cmax, v);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < int(counts[std::size_t(i)].size()); ++j) {
      int v = counts[std::size_t(i)][std::size_t(j)];
      int shade = 255 - int(std::lround(200.0 * v / cmax));
      os << "<rect x=\"" << left + j * cell << "\" y=\"" << top + i * cell << "\" width=\""
         << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << shade << ',' << shade
         << ",255)\" stroke=\"white\"/>\n";
      os << "<text x=\"" << left + j * cell + cell / 2 << "\" y=\"" << top + i * cell + cell / 2 + 4
         << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << v
         << "</text>\n";
    }
    std::string lab = i < int(labels.size()) ? labels[std::size_t(i)] : std::to_string(i);
    os << "<text x=\"" << left - 6 << "\" y=\"" << top + i * cell + cell / 2 + 4
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << escape(lab)
       << "</text>\n";
    os << "<text x=\"" << left + i * cell + cell / 2 << "\" y=\"" << top + n * cell + 16
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << escape(lab)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace zgf
