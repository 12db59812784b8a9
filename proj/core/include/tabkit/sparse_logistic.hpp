#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace tabkit {

/// Result of an l1-penalized logistic fit.
struct LogisticLassoFit {
  Eigen::VectorXd coefficients;
  double lambda = 0.0;
  int iterations = 0;
  double objective = 0.0;
  double kkt_residual = 0.0;
  bool converged = false;
};

/// Decreasing penalty grid, optionally annotated with cross-validation error.
struct LambdaPath {
  std::vector<double> lambdas;   // strictly decreasing
  std::vector<double> cv_mean;   // filled by cv_lambda_1se
  std::vector<double> cv_se;
};

/// Penalized negative Bernoulli log-likelihood (no intercept):
/// (1/n) sum_i [ln(1 + e^{x_i' beta}) - y_i x_i' beta] + lambda ||beta||_1.
double logistic_objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& xs,
                          const Eigen::VectorXd& ys, double lambda);

/// Gradient of the smooth part only: (1/n) X' (sigma(X beta) - y).
Eigen::VectorXd loss_gradient(const Eigen::VectorXd& beta, const Eigen::MatrixXd& xs,
                              const Eigen::VectorXd& ys);

/// Stationarity residual of the full objective at beta: for each coordinate,
/// max(|g_j| - lambda, 0) where beta_j = 0 and |g_j + lambda sgn(beta_j)|
/// elsewhere, maximized over j. Zero at an exact minimizer.
double kkt_residual(const Eigen::VectorXd& beta, const Eigen::MatrixXd& xs,
                    const Eigen::VectorXd& ys, double lambda);

/// Proximal-gradient solve with backtracking line search and soft
/// thresholding. Monotone in the objective; stops once the KKT residual falls
/// below tol. A fit that exhausts max_iter is returned with converged = false
/// and its final residual; callers decide how to proceed.
LogisticLassoFit fit_logistic_lasso(const Eigen::MatrixXd& xs,
                                    const Eigen::VectorXd& ys, double lambda,
                                    double tol = 1e-6, int max_iter = 100000,
                                    const Eigen::VectorXd* warm_start = nullptr);

/// Geometric grid of `count` penalties from lambda_max = ||grad(0)||_inf down
/// to 1e-3 * lambda_max. The first value admits only the all-zero solution.
LambdaPath lambda_grid(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys,
                       int count);

/// k-fold cross-validation over the grid, scoring mean squared error between
/// sigma(x' beta) and the labels. Returns the largest lambda whose mean error
/// is within one standard error of the minimum; fills grid.cv_mean / cv_se.
double cv_lambda_1se(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys,
                     int folds, LambdaPath& grid, std::uint64_t seed);

/// Theory-driven penalty c * sqrt(log d / n).
double select_lambda_theory(std::size_t n, double d, double c = 1.0);

/// Threshold for the logistic combiner:
/// c_tau * sqrt(s * ln d / n_q) * ln(max(n_q, n_p)).
double select_tau_logistic(std::size_t n_q, std::size_t n_p, int s, int d,
                           double c_tau);

}  // namespace tabkit
