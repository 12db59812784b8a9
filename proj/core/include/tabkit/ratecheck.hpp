#pragma once

#include <string>

#include "tabkit/evaluate.hpp"

namespace tabkit {

struct RateCheckReport {
  RateConfig config;
  RateResult result;
  double theoretical_exponent = 0.0;
};

/// Runs the empirical-scaling sweep and pairs the fitted slope with the
/// theoretical exponent -beta (1 + alpha) / (2 gamma beta + d) of the
/// scenario's constants.
RateCheckReport cmd_rate_check(const RateConfig& config, int threads);

/// Slope / SE / theoretical-exponent lines plus the per-point mean risks.
std::string format_rate_report(const RateCheckReport& report);

/// CSV with one row per grid point (n, mean_risk).
std::string rate_report_csv(const RateCheckReport& report);

}  // namespace tabkit
