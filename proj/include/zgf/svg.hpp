#pragma once

#include <string>
#include <vector>

namespace zgf {

struct SvgSeries {
  std::string name;
  std::vector<double> values;  // y samples, uniform x spacing
};

/// Multi-series line chart with axes and a legend; deterministic output.
std::string svg_line_chart(const std::vector<SvgSeries>& series, const std::string& title,
                           int width = 640, int height = 360);

/// Vertical bars with value labels (e.g. per-metric means).
std::string svg_bar_chart(const std::vector<std::string>& labels,
                          const std::vector<double>& values, const std::string& title,
                          int width = 480, int height = 320);

/// Count heatmap (confusion matrices): rows = truth, cols = prediction.
std::string svg_heatmap(const std::vector<std::vector<int>>& counts,
                        const std::vector<std::string>& labels, const std::string& title,
                        int cell = 48);

}  // namespace zgf
