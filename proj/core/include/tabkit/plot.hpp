#pragma once

#include <string>

#include "tabkit/config.hpp"
#include "tabkit/runner.hpp"

namespace tabkit {

/// Emits a standalone matplotlib script that re-renders the chart from the
/// CSV (summary rows only).
void write_plot_script(const SweepResult& result, const ExperimentConfig& config,
                       const std::string& script_path, const std::string& csv_path);

/// Renders the mean-metric-vs-grid line chart directly as an SVG, one line
/// per (gamma, method) series.
void write_svg_chart(const SweepResult& result, const ExperimentConfig& config,
                     const std::string& svg_path);

}  // namespace tabkit
