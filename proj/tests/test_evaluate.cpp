#include <doctest.h>

#include <cmath>
#include <set>

#include "tabkit/evaluate.hpp"
#include "tabkit/rng.hpp"

using namespace tabkit;

TEST_SUITE_BEGIN("evaluate");

TEST_CASE("accuracy counts exact matches") {
  LabeledSample test({{0, 0}, {1, 1}, {2, 2}, {3, 3}},
                     {1, 0, 1, 0}, SampleOrigin::Target);
  const DecisionRule memorized([](const Point& x) {
    return static_cast<int>(x[0]) % 2 == 0 ? 1 : 0;
  });
  CHECK(accuracy(memorized, test) == 1.0);

  const DecisionRule constant([](const Point&) { return 1; });
  CHECK(accuracy(constant, test) == 0.5);
  CHECK(accuracy(constant, test) + (1.0 - accuracy(constant, test)) == 1.0);
}

TEST_CASE("bayes agreement endpoints") {
  const Scenario sc = Scenario::band_like(1.0, 0.2);
  const DecisionRule bayes = bayes_rule(sc);
  CHECK(bayes_agreement(bayes, sc, 20000, 1).value == 1.0);

  const DecisionRule anti([bayes](const Point& x) { return 1 - bayes(x); });
  CHECK(bayes_agreement(anti, sc, 20000, 2).value == 0.0);

  const DecisionRule constant([](const Point&) { return 1; });
  const McEstimate est = bayes_agreement(constant, sc, 100000, 3);
  CHECK(std::abs(est.value - 0.5) <= 3.0 * est.std_error);
}

TEST_CASE("summary statistics") {
  const ReplicateSummary s = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(s.mean == doctest::Approx(2.5));
  CHECK(s.sd == doctest::Approx(std::sqrt(5.0 / 3.0)));
  CHECK(s.se == doctest::Approx(s.sd / 2.0));
  CHECK(s.count == 4);
  CHECK_THROWS_AS((void)summarize({}), std::invalid_argument);
}

TEST_CASE("replicate runs are a pure function of config and seed") {
  ExperimentCell cell;
  cell.scenario = Scenario::band_like(1.0, 0.1);
  cell.methods = {"q_knn", "tab_knn"};
  cell.n_q = 80;
  cell.n_p = 150;
  cell.n_test = 400;
  cell.knn.tau = 0.05;

  const CellResult a = run_replicates(cell, 3, 42);
  const CellResult b = run_replicates(cell, 3, 42, 2);
  REQUIRE(a.records.size() == 6);
  REQUIRE(b.records.size() == 6);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].accuracy == b.records[i].accuracy);
    CHECK(a.records[i].bayes_agreement == b.records[i].bayes_agreement);
    CHECK(a.records[i].excess_risk == b.records[i].excess_risk);
    CHECK(a.records[i].seed == b.records[i].seed);
  }

  const CellResult single = run_replicates(cell, 1, 42);
  CHECK(single.summaries.at("q_knn").accuracy.mean ==
        single.records[0].accuracy);
  CHECK(single.summaries.at("q_knn").accuracy.count == 1);

  std::set<std::uint64_t> seeds;
  for (const auto& rec : a.records) seeds.insert(rec.seed);
  CHECK(seeds.size() == 3);  // one distinct training seed per replicate
}

TEST_CASE("methods must match the scenario family") {
  ExperimentCell cell;
  cell.scenario = Scenario::band_like(1.0, 0.1);
  cell.methods = {"q_lasso"};
  CHECK_THROWS_AS((void)run_replicates(cell, 1, 1), std::invalid_argument);
  cell.methods = {"nonsense"};
  CHECK_THROWS_AS((void)run_replicates(cell, 1, 1), std::invalid_argument);
}

TEST_CASE("risk difference against the Bayes rule matches the excess estimate") {
  const Scenario sc = Scenario::band_like(1.0, 0.0, 0.1);
  const DecisionRule constant([](const Point&) { return 1; });
  const DecisionRule bayes = bayes_rule(sc);

  const std::size_t n = 200000;
  const LabeledSample test = sc.sample(SampleOrigin::Target, n, 55);
  const double risk_rule = 1.0 - accuracy(constant, test);
  const double risk_bayes = 1.0 - accuracy(bayes, test);
  const McEstimate excess = excess_risk_mc(constant, sc, n, 56);
  // binomial-scale error for the differenced risks
  const double se = std::sqrt(0.25 / n) * 2.0 + excess.std_error;
  CHECK(std::abs((risk_rule - risk_bayes) - excess.value) <= 3.0 * se);
}

TEST_CASE("log-log slope fitting") {
  const std::vector<double> ns{100, 200, 400, 800};
  std::vector<double> inv;
  for (double n : ns) inv.push_back(10.0 / n);
  const SlopeFit exact = fit_log_slope(ns, inv);
  CHECK(exact.slope == doctest::Approx(-1.0));
  CHECK(exact.std_error == doctest::Approx(0.0).epsilon(1e-10));

  const SlopeFit flat = fit_log_slope(ns, {3.0, 3.0, 3.0, 3.0});
  CHECK(flat.slope == doctest::Approx(0.0));

  CHECK_THROWS_AS((void)fit_log_slope({100, 200}, {1.0, 2.0}), std::invalid_argument);
  CHECK_THROWS_AS((void)fit_log_slope(ns, {1.0, 0.0, 1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("rate sweep wiring produces a finite slope") {
  RateConfig config;
  config.scenario = Scenario::band_like(1.0, 0.0);
  config.method = "p_knn";
  config.n_grid = {100, 200, 400};
  config.reps = 3;
  config.base_seed = 5;
  config.mc_points = 5000;
  const RateResult result = rate_slope(config, 2);
  CHECK(result.mean_risks.size() == 3);
  for (double r : result.mean_risks) CHECK(r > 0.0);
  CHECK(std::isfinite(result.fit.slope));
  CHECK(result.fit.slope < 0.0);  // more source data, less risk
}

TEST_SUITE_END();
