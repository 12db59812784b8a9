#include "tabkit/ratecheck.hpp"

#include <cstdio>
#include <sstream>

namespace tabkit {

RateCheckReport cmd_rate_check(const RateConfig& config, int threads) {
  RateCheckReport report;
  report.config = config;
  report.result = rate_slope(config, threads);
  const ProblemParams p = config.scenario.analytic_params();
  report.theoretical_exponent = -p.beta * (1.0 + p.alpha) /
                                (2.0 * p.gamma * p.beta + static_cast<double>(p.d));
  return report;
}

std::string format_rate_report(const RateCheckReport& report) {
  std::ostringstream out;
  out << "n          mean_excess_risk\n";
  for (std::size_t i = 0; i < report.config.n_grid.size(); ++i) {
    char line[80];
    std::snprintf(line, sizeof(line), "%-10zu %.6g\n", report.config.n_grid[i],
                  report.result.mean_risks[i]);
    out << line;
  }
  char tail[200];
  std::snprintf(tail, sizeof(tail),
                "fitted slope: %.4f (se %.4f)\ntheoretical exponent: %.4f\n",
                report.result.fit.slope, report.result.fit.std_error,
                report.theoretical_exponent);
  out << tail;
  return out.str();
}

std::string rate_report_csv(const RateCheckReport& report) {
  std::ostringstream out;
  out << "n,mean_excess_risk\n";
  for (std::size_t i = 0; i < report.config.n_grid.size(); ++i) {
    char line[80];
    std::snprintf(line, sizeof(line), "%zu,%.17g\n", report.config.n_grid[i],
                  report.result.mean_risks[i]);
    out << line;
  }
  return out.str();
}

}  // namespace tabkit
