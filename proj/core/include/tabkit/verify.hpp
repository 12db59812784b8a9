#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tabkit/scenarios.hpp"

namespace tabkit {

/// One Monte-Carlo-vs-closed-form comparison row.
struct BoundCheck {
  std::string family;   // band | logistic
  double gamma = 1.0;
  double delta = 0.0;   // band width or rotation angle
  double z = 0.0;
  double mc_value = 0.0;
  double mc_se = 0.0;
  double bound = 0.0;
  bool pass = false;    // mc_value <= bound + 3 * mc_se
};

struct VerifyOptions {
  std::vector<double> z_grid;             // default 0.02 .. 0.5 step 0.02
  std::vector<double> band_deltas = {0.0, 0.1, 0.3};
  std::vector<double> band_gammas = {0.5, 1.0};
  std::vector<double> logistic_deltas = {0.0, 0.25, 0.75, 1.25, 1.5};
  int logistic_d = 200;
  int logistic_s = 10;
  double amp_q = 0.1;
  std::size_t mc_points = 100000;
  std::uint64_t seed = 1;
};

struct VerifyReport {
  std::vector<BoundCheck> checks;
  bool all_pass = true;
};

/// Checks the Monte-Carlo ambiguity level against the matching closed-form
/// bound over the configured grids: band designs against the band bound
/// (indicator constant = band constant / 2) and the logistic rotation against
/// the logistic-pair bound with measured norms and realized angle.
VerifyReport cmd_verify_bounds(const VerifyOptions& options, int threads);

/// Human-readable table, one line per check plus a verdict line.
std::string format_report(const VerifyReport& report);

}  // namespace tabkit
