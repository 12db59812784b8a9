// Command-line front end: figure reproduction, generic sweeps, bound
// verification and rate checks. Exit codes: 0 success, 2 configuration
// error, 3 fit failure, 4 bound-verification failure.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tabkit/config.hpp"
#include "tabkit/evaluate.hpp"
#include "tabkit/figures.hpp"
#include "tabkit/ratecheck.hpp"
#include "tabkit/runner.hpp"
#include "tabkit/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitFit = 3;
constexpr int kExitBounds = 4;

struct CommonFlags {
  std::string config_path;
  std::string out;
  std::string grid;
  std::string gamma;
  std::string methods;
  std::string metric;
  long long reps = -1;
  long long seed = -1;
  long long n_q = -1;
  long long n_p = -1;
  long long n_test = -1;
  long long d = -1;
  long long s = -1;
  long long k_q = -1;
  long long k_p = -1;
  double tau = -1.0;
  double amp_q = -1.0;
  double amp_p = -1.0;
  bool theory_params = false;
  bool exact_angle = false;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "key=value configuration file");
  cmd->add_option("--out", flags.out, "output CSV path");
  cmd->add_option("--reps", flags.reps, "replicates per cell");
  cmd->add_option("--seed", flags.seed, "base seed");
  cmd->add_option("--grid", flags.grid, "comma-separated grid values");
  cmd->add_option("--gamma", flags.gamma, "comma-separated gamma values");
  cmd->add_option("--methods", flags.methods, "comma-separated method names");
  cmd->add_option("--n-q", flags.n_q, "target sample size");
  cmd->add_option("--n-p", flags.n_p, "source sample size");
  cmd->add_option("--n-test", flags.n_test, "test sample size");
  cmd->add_option("--tau", flags.tau, "combiner threshold override");
  cmd->add_option("--k-q", flags.k_q, "target neighbor count override");
  cmd->add_option("--k-p", flags.k_p, "source neighbor count override");
  cmd->add_option("--d", flags.d, "logistic ambient dimension");
  cmd->add_option("--s", flags.s, "logistic sparsity");
  cmd->add_option("--amp-q", flags.amp_q, "target amplitude");
  cmd->add_option("--amp-p", flags.amp_p, "source amplitude (flip design)");
  cmd->add_option("--metric", flags.metric, "plotted metric: accuracy|agreement")
      ->check(CLI::IsMember({"accuracy", "agreement"}));
  cmd->add_flag("--theory-params", flags.theory_params,
                "use theory-driven lambda instead of cross-validation");
  cmd->add_flag("--exact-angle", flags.exact_angle,
                "scale the rotation tail so the angle equals delta exactly");
}

/// Flag values as ordered key=value overrides; applied after any config file
/// so the command line wins.
std::vector<std::pair<std::string, std::string>> overrides_from(const CommonFlags& f) {
  std::vector<std::pair<std::string, std::string>> out;
  auto push = [&out](const char* key, const std::string& value) {
    out.emplace_back(key, value);
  };
  if (!f.grid.empty()) push("grid", f.grid);
  if (!f.gamma.empty()) push("gamma", f.gamma);
  if (!f.methods.empty()) push("methods", f.methods);
  if (!f.metric.empty()) push("metric", f.metric);
  if (f.reps >= 0) push("reps", std::to_string(f.reps));
  if (f.seed >= 0) push("seed", std::to_string(f.seed));
  if (f.n_q >= 0) push("n_q", std::to_string(f.n_q));
  if (f.n_p >= 0) push("n_p", std::to_string(f.n_p));
  if (f.n_test >= 0) push("n_test", std::to_string(f.n_test));
  if (f.d >= 0) push("d", std::to_string(f.d));
  if (f.s >= 0) push("s", std::to_string(f.s));
  if (f.k_q >= 0) push("k_q", std::to_string(f.k_q));
  if (f.k_p >= 0) push("k_p", std::to_string(f.k_p));
  if (f.tau >= 0) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", f.tau);
    push("tau", buf);
  }
  if (f.amp_q >= 0) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", f.amp_q);
    push("amp_q", buf);
  }
  if (f.amp_p >= 0) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", f.amp_p);
    push("amp_p", buf);
  }
  if (f.theory_params) push("theory_params", "1");
  if (f.exact_angle) push("exact_angle", "1");
  return out;
}

int report_sweep(const tabkit::SweepResult& result, const std::string& out_path) {
  for (const auto& e : result.errors) std::cerr << "fit failure: " << e << '\n';
  std::cout << "wrote " << result.detail.size() << " detail rows and "
            << result.summaries.size() << " summary rows";
  if (!out_path.empty()) std::cout << " to " << out_path;
  std::cout << '\n';
  return result.errors.empty() ? kExitOk : kExitFit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"transfer-learning classification toolkit"};
  app.require_subcommand(1);

  CommonFlags figure_flags;
  std::string figure_id;
  auto* figure_cmd =
      app.add_subcommand("figure", "run one of the preset reproduction sweeps");
  figure_cmd->add_option("id", figure_id, "band | flip | logistic")->required();
  add_common_flags(figure_cmd, figure_flags);

  CommonFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "run a sweep from a config file");
  add_common_flags(run_cmd, run_flags);
  run_flags.config_path.clear();

  auto* rate_cmd = app.add_subcommand("rate-check",
                                      "empirical excess-risk scaling check");
  std::string rate_method = "p_knn";
  std::string rate_grid = "250,500,1000,2000,4000,8000";
  std::string rate_out;
  double rate_gamma = 1.0;
  double rate_delta = 0.0;
  long long rate_reps = 50;
  long long rate_seed = 1;
  long long rate_mc = 100000;
  rate_cmd->add_option("--method", rate_method, "method to scale");
  rate_cmd->add_option("--grid", rate_grid, "comma-separated sample sizes");
  rate_cmd->add_option("--gamma", rate_gamma, "band transfer exponent");
  rate_cmd->add_option("--delta", rate_delta, "band width");
  rate_cmd->add_option("--reps", rate_reps, "replicates per grid point");
  rate_cmd->add_option("--seed", rate_seed, "base seed");
  rate_cmd->add_option("--mc-points", rate_mc, "Monte-Carlo points per risk");
  rate_cmd->add_option("--out", rate_out, "optional CSV path");

  auto* verify_cmd =
      app.add_subcommand("verify-bounds", "ambiguity-level bound verification");
  long long verify_seed = 1;
  long long verify_mc = 100000;
  verify_cmd->add_option("--seed", verify_seed, "base seed");
  verify_cmd->add_option("--mc-points", verify_mc, "Monte-Carlo points per cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  const int threads = tabkit::thread_budget();
  try {
    if (figure_cmd->parsed()) {
      const std::string out_path =
          figure_flags.out.empty() ? "figure_" + figure_id + ".csv" : figure_flags.out;
      const auto result =
          tabkit::cmd_figure(figure_id, overrides_from(figure_flags), out_path,
                             threads, figure_flags.config_path);
      return report_sweep(result, out_path);
    }

    if (run_cmd->parsed()) {
      tabkit::ExperimentConfig config;
      if (!run_flags.config_path.empty())
        config = tabkit::parse_config(run_flags.config_path);
      for (const auto& [key, value] : overrides_from(run_flags))
        tabkit::apply_key_value(config, key, value);
      const std::string out_path = !run_flags.out.empty() ? run_flags.out
                                   : !config.out.empty()  ? config.out
                                                          : "sweep.csv";
      const auto result = tabkit::run_experiment(config, threads);
      tabkit::write_outputs(result, config, out_path);
      return report_sweep(result, out_path);
    }

    if (rate_cmd->parsed()) {
      tabkit::RateConfig config;
      config.scenario = tabkit::Scenario::band_like(rate_gamma, rate_delta);
      config.method = rate_method;
      config.reps = static_cast<int>(rate_reps);
      config.base_seed = static_cast<std::uint64_t>(rate_seed);
      config.mc_points = static_cast<std::size_t>(rate_mc);
      std::stringstream in(rate_grid);
      std::string item;
      while (std::getline(in, item, ','))
        if (!item.empty()) config.n_grid.push_back(std::stoul(item));
      const auto report = tabkit::cmd_rate_check(config, threads);
      std::cout << tabkit::format_rate_report(report);
      if (!rate_out.empty()) {
        std::ofstream out(rate_out, std::ios::binary);
        out << tabkit::rate_report_csv(report);
      }
      return kExitOk;
    }

    if (verify_cmd->parsed()) {
      tabkit::VerifyOptions options;
      options.seed = static_cast<std::uint64_t>(verify_seed);
      options.mc_points = static_cast<std::size_t>(verify_mc);
      const auto report = tabkit::cmd_verify_bounds(options, threads);
      std::cout << tabkit::format_report(report);
      return report.all_pass ? kExitOk : kExitBounds;
    }
  } catch (const tabkit::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const tabkit::FitError& e) {
    std::cerr << "fit failure: " << e.what() << '\n';
    return kExitFit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFit;
  }
  return kExitConfig;
}
