#pragma once

#include <string>
#include <vector>

#include "fdim/io.hpp"

namespace fractal {

/// Standalone SVG, one log-log panel per estimator stacked top to bottom.
/// Points used in the fit are filled, the rest hollow.
std::string loglog_svg(const std::vector<PlotPanel>& panels);

void emit_loglog_plot(const std::vector<PlotPanel>& panels, const std::string& path);

}  // namespace fractal
