#ifndef RISKOPT_PLOT_HPP
#define RISKOPT_PLOT_HPP

#include <optional>
#include <string>
#include <vector>

#include "riskopt/contracts.hpp"

namespace riskopt {

struct PlotSpec {
  std::vector<CededLossFunction> contracts;  // solid polylines
  std::optional<double> deductible;          // dashed (x - d)_+ overlay when set
  double x_max = 1.0;
};

/// Standalone SVG with a fixed 480x360 viewBox and linear axes auto-scaled to
/// x_max and the largest plotted value. Coordinates are emitted with fixed
/// precision, so equal inputs produce byte-identical files.
std::string render_svg(const PlotSpec& spec);

}  // namespace riskopt

#endif  // RISKOPT_PLOT_HPP
