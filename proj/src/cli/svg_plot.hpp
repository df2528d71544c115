#pragma once

// Minimal SVG charts: scatter series and line series on linear or log axes.

#include <string>
#include <utility>
#include <vector>

namespace ringfwm::cli {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
  bool line = false;  // polyline instead of markers
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  bool log_y = false;
  std::vector<PlotSeries> series;
};

/// Non-positive values on a log axis are dropped.
std::string render_svg(const PlotSpec& spec);

}  // namespace ringfwm::cli
