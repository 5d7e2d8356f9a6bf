#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace mmsim::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  /// Optional symmetric band; empty for none.
  std::vector<double> band;
  /// Draw markers only, no line.
  bool markers = false;
};

struct Chart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
};

/// Self-contained SVG line chart with axes, ticks and a legend.
std::string render_svg(const Chart& chart);
void write_svg(const std::filesystem::path& path, const Chart& chart);

}  // namespace mmsim::cli
