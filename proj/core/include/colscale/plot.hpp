#pragma once

#include <optional>
#include <string>
#include <vector>

#include "colscale/report.hpp"

namespace col {

struct ScatterPoint {
  double x = 0, y = 0;
  std::string label;
  int group = 0;  // picks the color
};

struct BoxSeries {
  std::string name;
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
  std::optional<double> marker;  // e.g. the reference-segment value
};

struct PlotOptions {
  std::string title;
  std::string x_label;
  std::string y_label;
  int width = 800;
  int height = 600;
};

// Static SVG documents. Points are <circle class="point" data-label=...>,
// bars <rect class="bar">, boxes <rect class="box">.
std::string scatter_svg(const std::vector<ScatterPoint>& points, const PlotOptions& opts);
std::string histogram_svg(const Histogram& h, const PlotOptions& opts);
std::string boxplot_svg(const std::vector<BoxSeries>& series, const PlotOptions& opts);

// Boxes from category summaries, ordered as given.
std::vector<BoxSeries> boxes_from_categories(const std::vector<CategorySummary>& cats);

}  // namespace col
