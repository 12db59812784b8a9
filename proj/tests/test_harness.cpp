#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "tabkit/config.hpp"
#include "tabkit/figures.hpp"
#include "tabkit/ratecheck.hpp"
#include "tabkit/runner.hpp"
#include "tabkit/verify.hpp"

using namespace tabkit;

TEST_SUITE_BEGIN("harness");

TEST_CASE("empty config text yields defaults") {
  const ExperimentConfig c = parse_config_text("");
  CHECK(c == ExperimentConfig{});
}

TEST_CASE("unknown keys are rejected by name") {
  try {
    (void)parse_config_text("bogus_key=3\n");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("bogus_key") != std::string::npos);
  }
}

TEST_CASE("config round-trips through its serialized form") {
  ExperimentConfig c;
  c.scenario = "flip";
  c.grid = {0.0, 0.1, 0.25};
  c.gammas = {1.0};
  c.methods = {"q_knn", "tab_knn"};
  c.n_q = 123;
  c.n_p = 456;
  c.n_test = 789;
  c.reps = 7;
  c.seed = 99;
  c.metric = "agreement";
  c.out = "somewhere.csv";
  c.tau = 0.07;
  c.k_q = 21;
  c.amp_p = 0.3;
  c.exact_angle = true;
  const ExperimentConfig back = parse_config_text(serialize_config(c));
  CHECK(back == c);
}

TEST_CASE("later key application wins, mirroring flag-over-file") {
  ExperimentConfig c = parse_config_text("reps=5\nseed=1\n");
  apply_key_value(c, "reps", "9");
  CHECK(c.reps == 9);
  CHECK(c.seed == 1);
}

TEST_CASE("comments and whitespace are tolerated") {
  const ExperimentConfig c =
      parse_config_text("# a comment\n  reps = 4  # trailing\n\nseed=8\n");
  CHECK(c.reps == 4);
  CHECK(c.seed == 8);
}

TEST_CASE("invalid values are configuration errors") {
  CHECK_THROWS_AS((void)parse_config_text("reps=abc\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("scenario=nope\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("metric=foo\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("just a line\n"), ConfigError);
}

TEST_CASE("family defaults and method compatibility") {
  ExperimentConfig c;
  c.scenario = "logistic";
  const ExperimentConfig r = resolve_defaults(c);
  CHECK(r.n_p == 500);
  CHECK(r.metric == "accuracy");
  CHECK(r.methods.size() == 4);
  CHECK(r.grid.size() == 8);

  ExperimentConfig bad;
  bad.scenario = "band";
  bad.methods = {"q_lasso"};
  CHECK_THROWS_AS((void)resolve_defaults(bad), ConfigError);
}

namespace {

ExperimentConfig tiny_band_config() {
  ExperimentConfig c;
  c.scenario = "band";
  c.grid = {0.0, 0.2};
  c.gammas = {1.0};
  c.methods = {"q_knn", "p_knn", "tab_knn"};
  c.n_q = 60;
  c.n_p = 120;
  c.n_test = 300;
  c.reps = 2;
  c.seed = 31;
  return c;
}

}  // namespace

TEST_CASE("experiment output is byte-identical across runs and thread counts") {
  const ExperimentConfig c = tiny_band_config();
  const std::string csv1 = to_csv(run_experiment(c, 1));
  const std::string csv2 = to_csv(run_experiment(c, 2));
  const std::string csv3 = to_csv(run_experiment(c, 4));
  CHECK(csv1 == csv2);
  CHECK(csv1 == csv3);
  CHECK(csv1.find(kCsvHeader) == 0);
}

TEST_CASE("summary rows are the means of their detail rows") {
  const SweepResult result = run_experiment(tiny_band_config(), 2);
  REQUIRE(result.errors.empty());
  for (const auto& summary : result.summaries) {
    double acc = 0.0;
    int count = 0;
    for (const auto& rec : result.detail) {
      if (rec.method != summary.method ||
          rec.kind_param_value != summary.kind_param_value)
        continue;
      acc += rec.accuracy;
      ++count;
    }
    REQUIRE(count == 2);
    CHECK(summary.accuracy == doctest::Approx(acc / count).epsilon(1e-15));
    CHECK(summary.replicate == -1);
  }
}

TEST_CASE("detail rows follow the canonical ordering") {
  const SweepResult result = run_experiment(tiny_band_config(), 2);
  REQUIRE(result.detail.size() == 12);  // 2 cells x 3 methods x 2 reps
  // grid value ascends, then method order, then replicate
  CHECK(result.detail[0].kind_param_value == 0.0);
  CHECK(result.detail[0].method == "q_knn");
  CHECK(result.detail[0].replicate == 0);
  CHECK(result.detail[1].replicate == 1);
  CHECK(result.detail[2].method == "p_knn");
  CHECK(result.detail.back().kind_param_value == 0.2);
  CHECK(result.detail.back().method == "tab_knn");
}

TEST_CASE("figure presets exist and reject unknown ids") {
  CHECK(figure_config("band").scenario == "band");
  CHECK(figure_config("flip").grid.size() == 9);
  CHECK(figure_config("logistic").exact_angle);
  CHECK(figure_config("logistic").n_p == 500);
  CHECK_THROWS_AS((void)figure_config("nope"), ConfigError);
}

TEST_CASE("figure command applies overrides and writes all artifacts") {
  const std::string csv_path = "/tmp/tabkit_test_figure.csv";
  const SweepResult result = cmd_figure(
      "band",
      {{"reps", "1"}, {"grid", "0"}, {"gamma", "1"}, {"n_q", "50"},
       {"n_p", "80"}, {"n_test", "200"}, {"seed", "5"},
       {"methods", "q_knn,tab_knn"}},
      csv_path, 2);
  CHECK(result.detail.size() == 2);
  std::ifstream csv(csv_path);
  CHECK(csv.good());
  std::ifstream svg("/tmp/tabkit_test_figure.svg");
  CHECK(svg.good());
  std::stringstream svg_text;
  svg_text << svg.rdbuf();
  CHECK(svg_text.str().find("<svg") != std::string::npos);
  std::ifstream script("/tmp/tabkit_test_figure_plot.py");
  CHECK(script.good());
  std::remove(csv_path.c_str());
  std::remove("/tmp/tabkit_test_figure.svg");
  std::remove("/tmp/tabkit_test_figure_plot.py");
}

TEST_CASE("written csv is reproducible byte for byte") {
  const ExperimentConfig c = tiny_band_config();
  const SweepResult r1 = run_experiment(c, 2);
  const SweepResult r2 = run_experiment(c, 1);
  const std::string path1 = "/tmp/tabkit_bytes_1.csv";
  const std::string path2 = "/tmp/tabkit_bytes_2.csv";
  write_outputs(r1, c, path1);
  write_outputs(r2, c, path2);
  std::ifstream f1(path1, std::ios::binary), f2(path2, std::ios::binary);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  CHECK(s1.str() == s2.str());
  for (const char* p : {"/tmp/tabkit_bytes_1.csv", "/tmp/tabkit_bytes_2.csv",
                        "/tmp/tabkit_bytes_1.svg", "/tmp/tabkit_bytes_2.svg",
                        "/tmp/tabkit_bytes_1_plot.py", "/tmp/tabkit_bytes_2_plot.py"})
    std::remove(p);
}

TEST_CASE("missing values serialize as empty csv fields") {
  ResultRecord rec;
  rec.scenario = "band";
  rec.kind_param_name = "delta";
  rec.kind_param_value = 0.1;
  rec.gamma = 1.0;
  rec.method = "q_knn";
  rec.replicate = 0;
  rec.seed = 7;
  rec.n_q = 10;
  rec.n_p = 20;
  rec.k_q = 3;
  rec.d = 2;
  const std::string row = csv_row(rec);
  // k_p, tau, lambda_q, lambda_p, s stay empty
  CHECK(row.find(",3,,,,,2,,") != std::string::npos);
}

TEST_CASE("bound verification passes on a reduced grid") {
  VerifyOptions options;
  options.z_grid = {0.0, 0.1, 0.3};
  options.band_deltas = {0.0, 0.3};
  options.band_gammas = {1.0};
  options.logistic_deltas = {0.0, 0.75};
  options.logistic_d = 30;
  options.logistic_s = 5;
  options.mc_points = 20000;
  const VerifyReport report = cmd_verify_bounds(options, 2);
  CHECK(report.all_pass);
  // z = 0 rows are exactly zero on both sides
  for (const auto& check : report.checks)
    if (check.z == 0.0) {
      CHECK(check.mc_value == 0.0);
      CHECK(check.pass);
    }
  const std::string table = format_report(report);
  CHECK(table.find("all bounds hold") != std::string::npos);
}

TEST_CASE("rate report formatting includes slope and theory exponent") {
  RateCheckReport report;
  report.config.scenario = Scenario::band_like(1.0, 0.0);
  report.config.n_grid = {100, 200, 400};
  report.result.mean_risks = {0.1, 0.05, 0.025};
  report.result.fit = fit_log_slope({100, 200, 400}, report.result.mean_risks);
  report.theoretical_exponent = -0.5;
  const std::string text = format_rate_report(report);
  CHECK(text.find("fitted slope: -1.0000") != std::string::npos);
  CHECK(text.find("theoretical exponent: -0.5000") != std::string::npos);
  const std::string csv = rate_report_csv(report);
  CHECK(csv.find("n,mean_excess_risk") == 0);
}

TEST_SUITE_END();
