#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "tabkit/knn.hpp"
#include "tabkit/sparse_logistic.hpp"
#include "tabkit/types.hpp"

namespace tabkit {

/// Core combiner decision: the target plug-in label 1{eta_hat_q >= 1/2} when
/// |eta_hat_q - 1/2| >= tau, otherwise the source label. The boundary
/// |.| = tau takes the target branch.
int tab_predict(double eta_hat_q, double tau, int source_label);

/// Target regression estimate + threshold + source rule, combined per
/// tab_predict. Immutable.
class TabClassifier {
 public:
  TabClassifier(RegressionSurface target_estimate, double tau, DecisionRule source);

  int predict(const Point& x) const;
  DecisionRule as_rule() const;
  double tau() const { return tau_; }

 private:
  RegressionSurface target_;
  double tau_;
  DecisionRule source_;
};

/// Fitted classifier plus the parameters the fit actually used, for result
/// records. NaN marks fields that do not apply to the method.
struct MethodFit {
  DecisionRule rule;
  double k_q = std::numeric_limits<double>::quiet_NaN();
  double k_p = std::numeric_limits<double>::quiet_NaN();
  double tau = std::numeric_limits<double>::quiet_NaN();
  double lambda_q = std::numeric_limits<double>::quiet_NaN();
  double lambda_p = std::numeric_limits<double>::quiet_NaN();
};

/// Optional replacements for the selection-rule defaults.
struct KnnOverrides {
  std::optional<int> k_q;
  std::optional<int> k_p;
  std::optional<double> tau;
  double c_q = 1.0;
  double c_p = 1.0;
  double c_tau = 1.0;
};

/// Target-only plug-in 1{eta_hat_q >= 1/2}.
MethodFit fit_q_knn(const LabeledSample& dq, const ProblemParams& params,
                    const KnnOverrides& ov = {});

/// Source-only plug-in 1{eta_hat_p >= 1/2}.
MethodFit fit_p_knn(const LabeledSample& dp, const ProblemParams& params,
                    const KnnOverrides& ov = {});

/// Nearest-neighbor instantiation of the combiner: target estimate
/// eta_hat^Q_{k_q}, source rule 1{eta_hat^P_{k_p} >= 1/2}, parameters from the
/// selection rules unless overridden.
MethodFit fit_tab_knn(const LabeledSample& dq, const LabeledSample& dp,
                      const ProblemParams& params, const KnnOverrides& ov = {});

/// Weight pair (w_q, w_p) with w_q + w_p = 1 and
/// w_p / w_q = (n_q + n_p^{(2 beta + d)/(2 gamma beta + d)})^{(gamma-1) beta/(2 beta + d)}.
std::pair<double, double> weighted_scheme(std::size_t n_q, std::size_t n_p,
                                          double beta, double gamma, int d);

/// Benchmark rule 1{w_q eta_hat^Q(x) + w_p eta_hat^P(x) >= 1/2}.
MethodFit fit_weighted_knn(const LabeledSample& dq, const LabeledSample& dp,
                           const ProblemParams& params, const KnnOverrides& ov = {});

/// Odd k values, roughly geometric, spanning [1, 2 sqrt(n)].
std::vector<int> default_pooled_k_grid(std::size_t n);

/// Single K-NN on the concatenated sample with k chosen by cross-validated
/// 0-1 error; ties prefer the smaller k. The selected k is reported in k_q.
MethodFit fit_pooled_knn_cv(const LabeledSample& dq, const LabeledSample& dp,
                            int folds, const std::vector<int>& k_grid,
                            std::uint64_t seed);

/// Lasso-logistic fitting choices shared by the parametric methods.
struct LassoOptions {
  bool theory_params = false;        // penalty from select_lambda_theory
  double theory_c = 1.0;
  int cv_folds = 5;
  int grid_count = 50;
  std::optional<double> lambda;      // fixed penalty, skips selection
  std::optional<double> tau;         // fixed threshold for the combiner
  double c_tau = kDefaultLogisticCtau;
  std::uint64_t seed = 0;            // fold shuffling

  /// Default combiner-threshold constant, fixed after a one-time calibration
  /// against the rotation design at n_q=200, n_p=500, s=10, d=200 (where it
  /// yields tau ~ 0.064).
  static constexpr double kDefaultLogisticCtau = 0.02;
};

MethodFit fit_q_lasso(const LabeledSample& dq, const LassoOptions& opt = {});
MethodFit fit_p_lasso(const LabeledSample& dp, const LassoOptions& opt = {});
MethodFit fit_pooled_lasso(const LabeledSample& dq, const LabeledSample& dp,
                           const LassoOptions& opt = {});

/// Lasso-logistic instantiation of the combiner: target estimate
/// sigma(beta_q' x), source rule 1{beta_p' x >= 0}, threshold from
/// select_tau_logistic(s, ...) unless overridden.
MethodFit fit_tab_logistic(const LabeledSample& dq, const LabeledSample& dp,
                           int s, const LassoOptions& opt = {});

/// Row-major design matrix and 0/1 response vector for the lasso routines.
std::pair<Eigen::MatrixXd, Eigen::VectorXd> to_design(const LabeledSample& sample);

}  // namespace tabkit
