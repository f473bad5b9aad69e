#include "cmr/svg.hpp"

#include <algorithm>
#include <cmath>

#include "cmr/csv.hpp"

namespace cmr {
namespace {

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 600, kTop = 40, kBottom = 370;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b"};

std::string num(double v) {
  double r = std::round(v * 100.0) / 100.0;
  return format_double(r);
}

}  // namespace

std::string render_line_plot(const std::string& title,
                             const std::string& x_label,
                             const std::string& y_label,
                             const std::vector<SvgSeries>& series,
                             double x_max_clip) {
  double x_min = 0.0, x_max = 0.0, y_min = 0.0, y_max = 0.0;
  bool any = false;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      double xv = s.x[i];
      if (x_max_clip > 0.0 && xv > x_max_clip) xv = x_max_clip;
      if (!any) {
        x_min = x_max = xv;
        y_min = y_max = s.y[i];
        any = true;
      }
      x_min = std::min(x_min, xv);
      x_max = std::max(x_max, xv);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  if (!any) x_max = y_max = 1.0;
  if (x_max == x_min) x_max = x_min + 1.0;
  if (y_max == y_min) y_max = y_min + 1.0;

  auto sx = [&](double x) {
    return kLeft + (x - x_min) / (x_max - x_min) * (kRight - kLeft);
  };
  auto sy = [&](double y) {
    return kBottom - (y - y_min) / (y_max - y_min) * (kBottom - kTop);
  };

  std::string svg;
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) +
         "\" height=\"" + num(kHeight) + "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">" +
         title + "</text>\n";

  // axes
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kBottom) + "\" x2=\"" +
         num(kRight) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";
  svg += "<line x1=\"" + num(kLeft) + "\" y1=\"" + num(kTop) + "\" x2=\"" +
         num(kLeft) + "\" y2=\"" + num(kBottom) + "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    double fx = x_min + (x_max - x_min) * i / 5.0;
    double fy = y_min + (y_max - y_min) * i / 5.0;
    svg += "<text x=\"" + num(sx(fx)) + "\" y=\"" + num(kBottom + 16) +
           "\" text-anchor=\"middle\">" + num(fx) + "</text>\n";
    svg += "<text x=\"" + num(kLeft - 8) + "\" y=\"" + num(sy(fy) + 4) +
           "\" text-anchor=\"end\">" + num(fy) + "</text>\n";
  }
  svg += "<text x=\"" + num((kLeft + kRight) / 2) + "\" y=\"" +
         num(kHeight - 10) + "\" text-anchor=\"middle\">" + x_label + "</text>\n";
  svg += "<text x=\"16\" y=\"" + num((kTop + kBottom) / 2) +
         "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
         num((kTop + kBottom) / 2) + ")\">" + y_label + "</text>\n";

  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    std::string points;
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      double xv = s.x[i];
      if (x_max_clip > 0.0 && xv > x_max_clip) xv = x_max_clip;
      if (!points.empty()) points += ' ';
      points += num(sx(xv)) + "," + num(sy(s.y[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + points + "\"/>\n";
    double ly = kTop + 16.0 * si;
    svg += "<line x1=\"" + num(kRight - 120) + "\" y1=\"" + num(ly) +
           "\" x2=\"" + num(kRight - 96) + "\" y2=\"" + num(ly) +
           "\" stroke=\"" + color + "\" stroke-width=\"1.5\"/>\n";
    svg += "<text x=\"" + num(kRight - 90) + "\" y=\"" + num(ly + 4) + "\">" +
           s.label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace cmr
