#include "corraudit/plot.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "corraudit/error.hpp"
#include "corraudit/format.hpp"
#include "corraudit/linear_model.hpp"

namespace corraudit {

namespace {

constexpr double kMarginLeft = 64;
constexpr double kMarginRight = 20;
constexpr double kMarginTop = 36;
constexpr double kMarginBottom = 52;
constexpr int kBandSamples = 64;
constexpr int kTicks = 5;

std::string px(double v) { return format_fixed(v, 2); }

std::string xml_escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Axis {
  double lo;
  double hi;

  static Axis padded(double min, double max) {
    double span = max - min;
    if (span == 0) span = std::max(std::abs(min), 1.0);
    return {min - 0.05 * span, max + 0.05 * span};
  }
};

}  // namespace

std::string render_plot(const Dataset& ds, const PlotSpec& spec) {
  if (spec.width < 100 || spec.height < 100) {
    throw ConfigError("plot canvas must be at least 100x100 pixels");
  }
  const auto x = column(ds, spec.x_label);
  const auto y = column(ds, spec.y_label);
  const FitResult fit = fit_ols(x, y, spec.x_label, spec.y_label);

  const Axis ax = Axis::padded(x.minCoeff(), x.maxCoeff());
  Axis ay = Axis::padded(y.minCoeff(), y.maxCoeff());

  const double w = spec.width;
  const double h = spec.height;
  const double plot_w = w - kMarginLeft - kMarginRight;
  const double plot_h = h - kMarginTop - kMarginBottom;
  auto sx = [&](double v) { return kMarginLeft + (v - ax.lo) / (ax.hi - ax.lo) * plot_w; };
  auto sy = [&](double v) { return kMarginTop + (ay.hi - v) / (ay.hi - ay.lo) * plot_h; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << spec.width
      << "\" height=\"" << spec.height << "\" viewBox=\"0 0 " << spec.width << ' '
      << spec.height << "\">\n"
      << "<title>" << xml_escape(spec.y_label) << " explained by " << xml_escape(spec.x_label)
      << "</title>\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<defs><clipPath id=\"plot-area\"><rect x=\"" << px(kMarginLeft) << "\" y=\""
      << px(kMarginTop) << "\" width=\"" << px(plot_w) << "\" height=\"" << px(plot_h)
      << "\"/></clipPath></defs>\n";

  // axes and ticks
  svg << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<rect x=\"" << px(kMarginLeft) << "\" y=\"" << px(kMarginTop) << "\" width=\""
      << px(plot_w) << "\" height=\"" << px(plot_h) << "\"/>\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double tx = kMarginLeft + plot_w * i / kTicks;
    const double ty = kMarginTop + plot_h - plot_h * i / kTicks;
    svg << "<line x1=\"" << px(tx) << "\" y1=\"" << px(kMarginTop + plot_h) << "\" x2=\""
        << px(tx) << "\" y2=\"" << px(kMarginTop + plot_h + 5) << "\"/>\n"
        << "<line x1=\"" << px(kMarginLeft - 5) << "\" y1=\"" << px(ty) << "\" x2=\""
        << px(kMarginLeft) << "\" y2=\"" << px(ty) << "\"/>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"tick-labels\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= kTicks; ++i) {
    const double vx = ax.lo + (ax.hi - ax.lo) * i / kTicks;
    const double vy = ay.lo + (ay.hi - ay.lo) * i / kTicks;
    svg << "<text x=\"" << px(kMarginLeft + plot_w * i / kTicks) << "\" y=\""
        << px(kMarginTop + plot_h + 18) << "\" text-anchor=\"middle\">"
        << format_significant(vx, 4) << "</text>\n"
        << "<text x=\"" << px(kMarginLeft - 8) << "\" y=\""
        << px(kMarginTop + plot_h - plot_h * i / kTicks + 4) << "\" text-anchor=\"end\">"
        << format_significant(vy, 4) << "</text>\n";
  }
  svg << "</g>\n";

  svg << "<g class=\"axis-titles\" font-family=\"sans-serif\" font-size=\"13\" fill=\"black\">\n"
      << "<text x=\"" << px(kMarginLeft + plot_w / 2) << "\" y=\"" << px(h - 12)
      << "\" text-anchor=\"middle\">" << xml_escape(spec.x_label) << "</text>\n"
      << "<text x=\"16\" y=\"" << px(kMarginTop + plot_h / 2)
      << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " << px(kMarginTop + plot_h / 2)
      << ")\">" << xml_escape(spec.y_label) << "</text>\n"
      << "</g>\n";

  svg << "<g clip-path=\"url(#plot-area)\">\n";
  if (spec.show_band && fit.residual_std_error) {
    const double s = *fit.residual_std_error;
    const double n = static_cast<double>(fit.n);
    auto half_width = [&](double v) {
      const double d = v - fit.x_mean;
      return s * std::sqrt(1.0 / n + d * d / fit.sxx);
    };
    std::ostringstream upper, lower;
    for (int i = 0; i <= kBandSamples; ++i) {
      const double v = ax.lo + (ax.hi - ax.lo) * i / kBandSamples;
      const double yhat = fit.alpha + fit.beta * v;
      upper << px(sx(v)) << ',' << px(sy(yhat + half_width(v))) << ' ';
    }
    for (int i = kBandSamples; i >= 0; --i) {
      const double v = ax.lo + (ax.hi - ax.lo) * i / kBandSamples;
      const double yhat = fit.alpha + fit.beta * v;
      lower << px(sx(v)) << ',' << px(sy(yhat - half_width(v))) << (i ? " " : "");
    }
    svg << "<polygon class=\"band\" fill=\"#9ecae1\" fill-opacity=\"0.45\" stroke=\"none\" "
           "points=\""
        << upper.str() << lower.str() << "\"/>\n";
  }
  svg << "<line class=\"fit\" x1=\"" << px(sx(ax.lo)) << "\" y1=\""
      << px(sy(fit.alpha + fit.beta * ax.lo)) << "\" x2=\"" << px(sx(ax.hi)) << "\" y2=\""
      << px(sy(fit.alpha + fit.beta * ax.hi)) << "\" stroke=\"#08519c\" stroke-width=\"2\"/>\n";
  svg << "</g>\n";

  svg << "<g class=\"points\" fill=\"#252525\" fill-opacity=\"0.8\">\n";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    svg << "<circle cx=\"" << px(sx(x[i])) << "\" cy=\"" << px(sy(y[i])) << "\" r=\"3\"/>\n";
  }
  svg << "</g>\n";

  if (spec.annotate_r && fit.r) {
    svg << "<text class=\"annotation\" x=\"" << px(kMarginLeft + plot_w - 8) << "\" y=\""
        << px(kMarginTop + 18) << "\" text-anchor=\"end\" font-family=\"sans-serif\" "
        << "font-size=\"14\">r = " << format_fixed(*fit.r, 2) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace corraudit
