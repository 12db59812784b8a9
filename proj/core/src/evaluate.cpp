#include "tabkit/evaluate.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "tabkit/rng.hpp"

namespace tabkit {

ReplicateSummary summarize(const std::vector<double>& values) {
  if (values.empty()) throw std::invalid_argument("summarize: no values");
  ReplicateSummary s;
  s.count = values.size();
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) /
           static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - s.mean) * (v - s.mean);
  s.sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  s.se = s.sd / std::sqrt(static_cast<double>(values.size()));
  return s;
}

double accuracy(const DecisionRule& rule, const LabeledSample& test) {
  if (test.empty()) throw std::invalid_argument("accuracy: empty test set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < test.size(); ++i)
    if (rule(test.points[i]) == test.labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(test.size());
}

McEstimate bayes_agreement(const DecisionRule& rule, const Scenario& scenario,
                           std::size_t n, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("bayes_agreement: n must be positive");
  Rng rng(seed);
  std::size_t hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = scenario.sample_covariate(rng);
    const int bayes = scenario.eta_q(x) >= 0.5 ? 1 : 0;
    if (rule(x) == bayes) ++hits;
  }
  McEstimate est;
  est.value = static_cast<double>(hits) / static_cast<double>(n);
  est.std_error = std::sqrt(est.value * (1.0 - est.value) / static_cast<double>(n));
  est.n = n;
  return est;
}

namespace {

bool is_knn_method(const std::string& m) {
  return m == "q_knn" || m == "p_knn" || m == "tab_knn" || m == "pooled_knn" ||
         m == "weighted_knn";
}

struct RuleMetrics {
  double accuracy = 0.0;
  double agreement = 0.0;
  double excess = 0.0;
};

/// Single pass over the test sample: label accuracy, Bayes agreement and the
/// Monte-Carlo excess risk share the same covariate draws.
RuleMetrics evaluate_rule(const DecisionRule& rule, const LabeledSample& test,
                          const Scenario& scenario) {
  RuleMetrics m;
  const std::size_t n = test.size();
  double excess_sum = 0.0;
  std::size_t acc_hits = 0, agree_hits = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point& x = test.points[i];
    const int pred = rule(x);
    const double eta = scenario.eta_q(x);
    const int bayes = eta >= 0.5 ? 1 : 0;
    if (pred == test.labels[i]) ++acc_hits;
    if (pred == bayes) ++agree_hits;
    if (pred != bayes) excess_sum += 2.0 * std::abs(eta - 0.5);
  }
  m.accuracy = static_cast<double>(acc_hits) / static_cast<double>(n);
  m.agreement = static_cast<double>(agree_hits) / static_cast<double>(n);
  m.excess = excess_sum / static_cast<double>(n);
  return m;
}

}  // namespace

MethodFit fit_method(const std::string& method, const ExperimentCell& cell,
                     const LabeledSample& dq, const LabeledSample& dp,
                     std::uint64_t fit_seed) {
  const ProblemParams params = cell.scenario.analytic_params();
  LassoOptions lasso = cell.lasso;
  lasso.seed = fit_seed;
  try {
    if (method == "q_knn") return fit_q_knn(dq, params, cell.knn);
    if (method == "p_knn") return fit_p_knn(dp, params, cell.knn);
    if (method == "tab_knn") return fit_tab_knn(dq, dp, params, cell.knn);
    if (method == "weighted_knn") return fit_weighted_knn(dq, dp, params, cell.knn);
    if (method == "pooled_knn")
      return fit_pooled_knn_cv(dq, dp, 5, default_pooled_k_grid(dq.size() + dp.size()),
                               fit_seed);
    if (method == "q_lasso") return fit_q_lasso(dq, lasso);
    if (method == "p_lasso") return fit_p_lasso(dp, lasso);
    if (method == "pooled_lasso") return fit_pooled_lasso(dq, dp, lasso);
    if (method == "tab_lasso")
      return fit_tab_logistic(dq, dp, cell.scenario.sparsity(), lasso);
  } catch (const std::exception& e) {
    throw FitError(method + ": " + e.what());
  }
  throw FitError("unknown method: " + method);
}

std::vector<ResultRecord> run_one_replicate(const ExperimentCell& cell, int rep,
                                            std::uint64_t base_seed) {
  const auto idx = static_cast<std::uint64_t>(rep);
  const std::uint64_t seed_q = derive_seed(base_seed, idx, Stream::TrainTarget);
  const std::uint64_t seed_p = derive_seed(base_seed, idx, Stream::TrainSource);
  const std::uint64_t seed_test = derive_seed(base_seed, idx, Stream::Test);
  const std::uint64_t seed_fit = derive_seed(base_seed, idx, Stream::Fit);

  const LabeledSample dq = cell.scenario.sample(SampleOrigin::Target, cell.n_q, seed_q);
  const LabeledSample dp = cell.scenario.sample(SampleOrigin::Source, cell.n_p, seed_p);
  const LabeledSample test =
      cell.scenario.sample(SampleOrigin::Target, cell.n_test, seed_test);

  std::vector<ResultRecord> out;
  out.reserve(cell.methods.size());
  for (const std::string& method : cell.methods) {
    const MethodFit fit = fit_method(method, cell, dq, dp, seed_fit);
    const RuleMetrics metrics = evaluate_rule(fit.rule, test, cell.scenario);
    ResultRecord rec;
    rec.scenario = cell.scenario.name();
    rec.kind_param_name = cell.scenario.kind_param_name();
    rec.kind_param_value = cell.scenario.kind_param_value();
    if (cell.scenario.kind() != ScenarioKind::LogisticRotation)
      rec.gamma = cell.scenario.gamma();
    rec.method = method;
    rec.replicate = rep;
    rec.seed = seed_q;
    rec.n_q = cell.n_q;
    rec.n_p = cell.n_p;
    rec.k_q = fit.k_q;
    rec.k_p = fit.k_p;
    rec.tau = fit.tau;
    rec.lambda_q = fit.lambda_q;
    rec.lambda_p = fit.lambda_p;
    rec.d = cell.scenario.dim();
    if (cell.scenario.kind() == ScenarioKind::LogisticRotation)
      rec.s = cell.scenario.sparsity();
    rec.accuracy = metrics.accuracy;
    rec.bayes_agreement = metrics.agreement;
    rec.excess_risk = metrics.excess;
    out.push_back(std::move(rec));
  }
  return out;
}

CellResult run_replicates(const ExperimentCell& cell, int reps,
                          std::uint64_t base_seed, int threads) {
  if (reps < 1) throw std::invalid_argument("run_replicates: reps must be >= 1");
  if (cell.methods.empty())
    throw std::invalid_argument("run_replicates: no methods configured");
  for (const auto& m : cell.methods) {
    const bool knn = is_knn_method(m);
    const bool nonparam = cell.scenario.kind() != ScenarioKind::LogisticRotation;
    if (knn != nonparam)
      throw std::invalid_argument("run_replicates: method " + m +
                                  " does not match the scenario kind");
  }

  std::vector<std::vector<ResultRecord>> per_rep(static_cast<std::size_t>(reps));
  std::vector<std::string> errors(static_cast<std::size_t>(reps));

  auto work = [&](int rep) {
    try {
      per_rep[static_cast<std::size_t>(rep)] = run_one_replicate(cell, rep, base_seed);
    } catch (const std::exception& e) {
      errors[static_cast<std::size_t>(rep)] =
          "replicate " + std::to_string(rep) + ": " + e.what();
    }
  };

  if (threads <= 1 || reps == 1) {
    for (int r = 0; r < reps; ++r) work(r);
  } else {
    std::atomic<int> next{0};
    const int workers = std::min(threads, reps);
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) work(r);
      });
    for (auto& t : pool) t.join();
  }

  CellResult result;
  for (auto& rows : per_rep)
    for (auto& row : rows) result.records.push_back(std::move(row));
  for (auto& e : errors)
    if (!e.empty()) result.errors.push_back(std::move(e));

  for (const std::string& method : cell.methods) {
    std::vector<double> acc, agree, excess;
    for (const auto& rec : result.records) {
      if (rec.method != method) continue;
      acc.push_back(rec.accuracy);
      agree.push_back(rec.bayes_agreement);
      excess.push_back(rec.excess_risk);
    }
    if (acc.empty()) continue;
    MethodSummary ms;
    ms.accuracy = summarize(acc);
    ms.bayes_agreement = summarize(agree);
    ms.excess_risk = summarize(excess);
    result.summaries[method] = ms;
  }
  return result;
}

SlopeFit fit_log_slope(const std::vector<double>& ns, const std::vector<double>& risks) {
  if (ns.size() != risks.size())
    throw std::invalid_argument("fit_log_slope: size mismatch");
  if (ns.size() < 3) throw std::invalid_argument("fit_log_slope: need >= 3 grid points");
  const std::size_t m = ns.size();
  std::vector<double> xs(m), ys(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (ns[i] <= 0) throw std::invalid_argument("fit_log_slope: n must be positive");
    if (risks[i] <= 0)
      throw std::invalid_argument("fit_log_slope: zero or negative mean risk, log undefined");
    xs[i] = std::log(ns[i]);
    ys[i] = std::log(risks[i]);
  }
  const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(m);
  const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(m);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
  }
  if (sxx <= 0) throw std::invalid_argument("fit_log_slope: degenerate grid");
  SlopeFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = ybar - fit.slope * xbar;
  double rss = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
    rss += r * r;
  }
  fit.std_error = m > 2 ? std::sqrt(rss / static_cast<double>(m - 2) / sxx) : 0.0;
  return fit;
}

RateResult rate_slope(const RateConfig& config, int threads) {
  if (config.n_grid.size() < 3)
    throw std::invalid_argument("rate_slope: need >= 3 grid points");
  if (config.reps < 1) throw std::invalid_argument("rate_slope: reps must be >= 1");

  struct Task {
    std::size_t grid_idx;
    int rep;
  };
  std::vector<Task> tasks;
  for (std::size_t g = 0; g < config.n_grid.size(); ++g)
    for (int r = 0; r < config.reps; ++r) tasks.push_back({g, r});

  std::vector<std::vector<double>> risks(config.n_grid.size(),
                                         std::vector<double>(static_cast<std::size_t>(config.reps)));

  auto work = [&](const Task& task) {
    const std::size_t n = config.n_grid[task.grid_idx];
    ExperimentCell cell;
    cell.scenario = config.scenario;
    cell.methods = {config.method};
    cell.n_q = config.method == "p_knn" ? config.fixed_n_q : n;
    cell.n_p = config.method == "q_knn" ? config.fixed_n_p : n;
    // Seeds separate per grid point so cells are independent.
    const std::uint64_t cell_seed =
        mix64(config.base_seed ^ (0xabc0 + static_cast<std::uint64_t>(task.grid_idx)));
    const auto idx = static_cast<std::uint64_t>(task.rep);
    const std::uint64_t seed_q = derive_seed(cell_seed, idx, Stream::TrainTarget);
    const std::uint64_t seed_p = derive_seed(cell_seed, idx, Stream::TrainSource);
    const std::uint64_t seed_fit = derive_seed(cell_seed, idx, Stream::Fit);
    const std::uint64_t seed_eval = derive_seed(cell_seed, idx, Stream::Eval);

    const LabeledSample dq =
        cell.scenario.sample(SampleOrigin::Target, cell.n_q, seed_q);
    const LabeledSample dp =
        cell.scenario.sample(SampleOrigin::Source, cell.n_p, seed_p);
    const MethodFit fit = fit_method(config.method, cell, dq, dp, seed_fit);
    risks[task.grid_idx][static_cast<std::size_t>(task.rep)] =
        excess_risk_mc(fit.rule, cell.scenario, config.mc_points, seed_eval).value;
  };

  if (threads <= 1) {
    for (const auto& t : tasks) work(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int workers =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(threads), tasks.size()));
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < tasks.size(); i = next.fetch_add(1))
          work(tasks[i]);
      });
    for (auto& t : pool) t.join();
  }

  RateResult result;
  std::vector<double> ns;
  for (std::size_t g = 0; g < config.n_grid.size(); ++g) {
    const ReplicateSummary s = summarize(risks[g]);
    result.mean_risks.push_back(s.mean);
    ns.push_back(static_cast<double>(config.n_grid[g]));
  }
  result.fit = fit_log_slope(ns, result.mean_risks);
  return result;
}

}  // namespace tabkit
