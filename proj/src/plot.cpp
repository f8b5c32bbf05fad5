#include "riskopt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace riskopt {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 52.0;
constexpr double kRight = 16.0;
constexpr double kTop = 16.0;
constexpr double kBottom = 44.0;

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string compact(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<double> sample_points(const CededLossFunction& f, double x_max) {
  std::vector<double> xs{0.0, x_max};
  for (const auto& k : f.knots()) {
    if (k.x > 0.0 && k.x < x_max) xs.push_back(k.x);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  return xs;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
  const double x_max = spec.x_max > 0.0 ? spec.x_max : 1.0;
  double y_max = 0.0;
  for (const auto& f : spec.contracts) {
    for (double x : sample_points(f, x_max)) y_max = std::max(y_max, f(x));
  }
  if (spec.deductible && *spec.deductible < x_max) {
    y_max = std::max(y_max, x_max - *spec.deductible);
  }
  if (y_max <= 0.0) y_max = 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + plot_w * x / x_max; };
  auto py = [&](double y) { return kHeight - kBottom - plot_h * y / y_max; };

  auto polyline = [&](const std::vector<double>& xs, const CededLossFunction& f) {
    std::ostringstream pts;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i) pts << ' ';
      pts << fixed2(px(xs[i])) << ',' << fixed2(py(f(xs[i])));
    }
    return pts.str();
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 480 360\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"480\" height=\"360\" fill=\"#ffffff\"/>\n";

  // axes
  svg << "  <line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kHeight - kBottom)
      << "\" x2=\"" << fixed2(kWidth - kRight) << "\" y2=\"" << fixed2(kHeight - kBottom)
      << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg << "  <line x1=\"" << fixed2(kLeft) << "\" y1=\"" << fixed2(kHeight - kBottom)
      << "\" x2=\"" << fixed2(kLeft) << "\" y2=\"" << fixed2(kTop)
      << "\" stroke=\"#000000\" stroke-width=\"1\"/>\n";
  svg << "  <text x=\"" << fixed2(kWidth - kRight) << "\" y=\""
      << fixed2(kHeight - kBottom + 28.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"14\">x</text>\n";
  svg << "  <text x=\"" << fixed2(kLeft - 36.0) << "\" y=\"" << fixed2(kTop + 10.0)
      << "\" font-family=\"sans-serif\" font-size=\"14\">f(x)</text>\n";

  // end-of-axis tick labels
  svg << "  <text x=\"" << fixed2(kLeft) << "\" y=\"" << fixed2(kHeight - kBottom + 16.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">0</text>\n";
  svg << "  <text x=\"" << fixed2(px(x_max)) << "\" y=\""
      << fixed2(kHeight - kBottom + 16.0)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
      << compact(x_max) << "</text>\n";
  svg << "  <text x=\"" << fixed2(kLeft - 6.0) << "\" y=\"" << fixed2(py(y_max) + 4.0)
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
      << compact(y_max) << "</text>\n";

  if (spec.deductible) {
    const double d = *spec.deductible;
    std::ostringstream pts;
    pts << fixed2(px(0.0)) << ',' << fixed2(py(0.0));
    if (d > 0.0 && d < x_max) pts << ' ' << fixed2(px(d)) << ',' << fixed2(py(0.0));
    if (d < x_max) pts << ' ' << fixed2(px(x_max)) << ',' << fixed2(py(x_max - d));
    svg << "  <polyline points=\"" << pts.str()
        << "\" fill=\"none\" stroke=\"#777777\" stroke-width=\"1.5\""
        << " stroke-dasharray=\"6 4\"/>\n";
    if (d > 0.0 && d < x_max) {
      svg << "  <text x=\"" << fixed2(px(d)) << "\" y=\""
          << fixed2(kHeight - kBottom + 16.0)
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">d="
          << compact(d) << "</text>\n";
    }
  }

  static const char* kPalette[] = {"#1f4e79", "#a63603", "#2a7e43", "#6a3d9a"};
  for (std::size_t i = 0; i < spec.contracts.size(); ++i) {
    const auto& f = spec.contracts[i];
    svg << "  <polyline points=\"" << polyline(sample_points(f, x_max), f)
        << "\" fill=\"none\" stroke=\"" << kPalette[i % 4]
        << "\" stroke-width=\"2\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace riskopt
