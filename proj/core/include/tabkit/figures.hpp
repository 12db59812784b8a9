#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tabkit/config.hpp"
#include "tabkit/runner.hpp"

namespace tabkit {

/// Preset configuration of one reproduction figure: band (band-like ambiguity
/// sweep), flip (partially flipped sine sweep) or logistic (coefficient
/// rotation sweep). Throws ConfigError for unknown ids.
ExperimentConfig figure_config(const std::string& id);

/// Resolves the preset, applies the config file (when nonempty) and then the
/// overrides in order (so CLI flags win), runs the sweep and writes CSV +
/// plot script + SVG next to out_path. Returns the sweep for inspection.
SweepResult cmd_figure(const std::string& id,
                       const std::vector<std::pair<std::string, std::string>>& overrides,
                       const std::string& out_path, int threads,
                       const std::string& config_path = "");

}  // namespace tabkit
