#pragma once

#include <string>

#include "corraudit/dataset.hpp"

namespace corraudit {

struct PlotSpec {
  std::string x_label;
  std::string y_label;
  int width = 640;
  int height = 480;
  /// Shade yhat +/- s * sqrt(1/n + (x - xbar)^2 / sxx) around the line.
  bool show_band = true;
  /// Adds "r = <value to 2 dp>" when r is defined.
  bool annotate_r = true;
};

/// Scatter of (x, y) with the least-squares line, as a standalone SVG 1.1
/// document. Axis ranges are the data range padded by 5% on each side.
std::string render_plot(const Dataset& ds, const PlotSpec& spec);

}  // namespace corraudit
