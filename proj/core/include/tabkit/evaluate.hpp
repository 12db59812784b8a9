#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tabkit/classifiers.hpp"
#include "tabkit/model.hpp"
#include "tabkit/scenarios.hpp"
#include "tabkit/types.hpp"

namespace tabkit {

/// One (scenario, method, replicate) measurement row. NaN marks parameters
/// that do not apply to the method.
struct ResultRecord {
  std::string scenario;
  std::string kind_param_name;
  double kind_param_value = 0.0;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  std::string method;
  int replicate = 0;  // -1 marks a summary row
  std::uint64_t seed = 0;
  std::size_t n_q = 0;
  std::size_t n_p = 0;
  double k_q = std::numeric_limits<double>::quiet_NaN();
  double k_p = std::numeric_limits<double>::quiet_NaN();
  double tau = std::numeric_limits<double>::quiet_NaN();
  double lambda_q = std::numeric_limits<double>::quiet_NaN();
  double lambda_p = std::numeric_limits<double>::quiet_NaN();
  double d = std::numeric_limits<double>::quiet_NaN();
  double s = std::numeric_limits<double>::quiet_NaN();
  double accuracy = 0.0;
  double bayes_agreement = 0.0;
  double excess_risk = 0.0;
};

struct ReplicateSummary {
  double mean = 0.0;
  double sd = 0.0;
  double se = 0.0;
  std::size_t count = 0;
};

ReplicateSummary summarize(const std::vector<double>& values);

/// Per-method summaries across replicates, one per recorded metric.
struct MethodSummary {
  ReplicateSummary accuracy;
  ReplicateSummary bayes_agreement;
  ReplicateSummary excess_risk;
};

/// Fraction of test points with rule(x) = y.
double accuracy(const DecisionRule& rule, const LabeledSample& test);

/// Monte-Carlo fraction of X ~ Q_X with rule(X) = f*_Q(X).
McEstimate bayes_agreement(const DecisionRule& rule, const Scenario& scenario,
                           std::size_t n, std::uint64_t seed);

/// One experiment cell: a scenario, the methods to fit, and the shared sizes
/// and fitting options.
struct ExperimentCell {
  Scenario scenario = Scenario::band_like(1.0, 0.0);
  std::vector<std::string> methods;
  std::size_t n_q = 200;
  std::size_t n_p = 1000;
  std::size_t n_test = 50000;
  KnnOverrides knn;
  LassoOptions lasso;
};

/// Signals a failed model fit inside a replicate.
struct FitError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Fits one method by name on already-drawn data. Valid names: q_knn, p_knn,
/// tab_knn, pooled_knn, weighted_knn, q_lasso, p_lasso, tab_lasso,
/// pooled_lasso.
MethodFit fit_method(const std::string& method, const ExperimentCell& cell,
                     const LabeledSample& dq, const LabeledSample& dp,
                     std::uint64_t fit_seed);

/// Records for replicate `rep`: training data, test data and all fits are
/// regenerated from seeds derived from (base_seed, rep), so the output is a
/// pure function of (cell, rep, base_seed).
std::vector<ResultRecord> run_one_replicate(const ExperimentCell& cell, int rep,
                                            std::uint64_t base_seed);

struct CellResult {
  std::vector<ResultRecord> records;
  std::map<std::string, MethodSummary> summaries;  // keyed by method
  std::vector<std::string> errors;                 // aborted replicates
};

/// Runs `reps` independent replicates of the cell. Replicates are
/// embarrassingly parallel; `threads` <= 1 runs inline.
CellResult run_replicates(const ExperimentCell& cell, int reps,
                          std::uint64_t base_seed, int threads = 1);

struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
};

/// Least-squares slope of ln(risk) against ln(n). Requires >= 3 grid points
/// and strictly positive risks.
SlopeFit fit_log_slope(const std::vector<double>& ns, const std::vector<double>& risks);

struct RateConfig {
  Scenario scenario = Scenario::band_like(1.0, 0.0);
  std::string method = "p_knn";
  std::vector<std::size_t> n_grid;
  int reps = 50;
  std::uint64_t base_seed = 1;
  std::size_t mc_points = 100000;
  std::size_t fixed_n_q = 200;
  std::size_t fixed_n_p = 1000;
};

struct RateResult {
  SlopeFit fit;
  std::vector<double> mean_risks;  // one per grid point
};

/// Empirical excess-risk scaling of a method: the grid value replaces n_p for
/// source-trained fits, n_q for target-only fits, and both otherwise. Mean
/// risk per grid point is averaged over replicates, then fitted on log-log
/// scale.
RateResult rate_slope(const RateConfig& config, int threads = 1);

}  // namespace tabkit
