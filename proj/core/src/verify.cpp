#include "tabkit/verify.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <thread>

#include "tabkit/model.hpp"
#include "tabkit/rng.hpp"

namespace tabkit {

namespace {

std::vector<double> default_z_grid() {
  std::vector<double> zs;
  for (int i = 1; i <= 25; ++i) zs.push_back(0.02 * i);
  return zs;
}

double vector_norm(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

}  // namespace

VerifyReport cmd_verify_bounds(const VerifyOptions& options, int threads) {
  VerifyOptions opt = options;
  if (opt.z_grid.empty()) opt.z_grid = default_z_grid();

  struct Cell {
    Scenario scenario;
    std::string family;
    double gamma;
    double delta;
    double z;
    double indicator_c;  // ambiguity indicator constant
    double bound;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;

  for (double gamma : opt.band_gammas) {
    for (double delta : opt.band_deltas) {
      Scenario sc = Scenario::band_like(gamma, delta, opt.amp_q);
      ProblemParams bound_params = sc.analytic_params();
      bound_params.c_gamma = sc.band_constant();  // bound takes the band constant
      const double indicator_c = sc.band_constant() / 2.0;
      for (double z : opt.z_grid) {
        Cell cell{sc,
                  "band",
                  gamma,
                  delta,
                  z,
                  indicator_c,
                  ambiguity_bound_bandlike(z, delta, bound_params),
                  0};
        cells.push_back(std::move(cell));
      }
    }
  }
  for (double delta : opt.logistic_deltas) {
    Scenario sc = Scenario::logistic_rotation(opt.logistic_d, opt.logistic_s, delta);
    const double norm_q = vector_norm(sc.coeffs().beta_q);
    const double norm_p = vector_norm(sc.coeffs().beta_p);
    const double realized =
        delta == 0.0 ? 0.0 : angle_between(sc.coeffs().beta_q, sc.coeffs().beta_p);
    const double m = 1.0;  // ||beta_p|| >= 3 ||beta_q|| by construction
    for (double z : opt.z_grid) {
      Cell cell{sc,
                "logistic",
                1.0,
                delta,
                z,
                m / 3.14159265358979323846,
                ambiguity_bound_logistic(z, realized, m, norm_q, norm_p),
                0};
      cells.push_back(std::move(cell));
    }
  }
  for (std::size_t i = 0; i < cells.size(); ++i)
    cells[i].seed = derive_seed(opt.seed, i, Stream::Eval);

  VerifyReport report;
  report.checks.resize(cells.size());

  auto work = [&](std::size_t i) {
    const Cell& cell = cells[i];
    const McEstimate mc = ambiguity_level_mc(cell.scenario, cell.z, cell.gamma,
                                             cell.indicator_c, opt.mc_points,
                                             cell.seed);
    BoundCheck check;
    check.family = cell.family;
    check.gamma = cell.gamma;
    check.delta = cell.delta;
    check.z = cell.z;
    check.mc_value = mc.value;
    check.mc_se = mc.std_error;
    check.bound = cell.bound;
    check.pass = mc.value <= cell.bound + 3.0 * mc.std_error;
    report.checks[i] = std::move(check);
  };

  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<std::size_t>(
        static_cast<std::size_t>(threads), cells.size()));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < cells.size();
             i = next.fetch_add(1))
          work(i);
      });
    for (auto& t : pool) t.join();
  }

  for (const auto& check : report.checks)
    if (!check.pass) report.all_pass = false;
  return report;
}

std::string format_report(const VerifyReport& report) {
  std::ostringstream out;
  out << "family   gamma  delta   z      mc_value     mc_se        bound        "
         "verdict\n";
  for (const auto& c : report.checks) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "%-8s %-6.3g %-7.3g %-6.3g %-12.6g %-12.6g %-12.6g %s\n",
                  c.family.c_str(), c.gamma, c.delta, c.z, c.mc_value, c.mc_se,
                  c.bound, c.pass ? "pass" : "FAIL");
    out << line;
  }
  out << (report.all_pass ? "all bounds hold\n" : "BOUND VIOLATION DETECTED\n");
  return out.str();
}

}  // namespace tabkit
