#pragma once

#include <string>
#include <vector>

namespace cmr {

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal static line plot: axes, tick labels, legend, one polyline per
/// series.  Points with non-finite coordinates are dropped.
std::string render_line_plot(const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series,
                             double x_max_clip = 0.0);

}  // namespace cmr
