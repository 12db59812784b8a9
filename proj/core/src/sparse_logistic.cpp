#include "tabkit/sparse_logistic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tabkit/rng.hpp"

namespace tabkit {

namespace {

double softplus(double t) {
  // ln(1 + e^t), stable for large |t|.
  return std::max(t, 0.0) + std::log1p(std::exp(-std::abs(t)));
}

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

double smooth_loss(const Eigen::VectorXd& beta, const Eigen::MatrixXd& xs,
                   const Eigen::VectorXd& ys) {
  const Eigen::VectorXd margins = xs * beta;
  double sum = 0.0;
  for (Eigen::Index i = 0; i < margins.size(); ++i)
    sum += softplus(margins[i]) - ys[i] * margins[i];
  return sum / static_cast<double>(xs.rows());
}

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double t) {
  Eigen::VectorXd out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) {
    if (v[j] > t)
      out[j] = v[j] - t;
    else if (v[j] < -t)
      out[j] = v[j] + t;
    else
      out[j] = 0.0;
  }
  return out;
}

void check_dims(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys) {
  if (xs.rows() == 0 || xs.cols() == 0)
    throw std::invalid_argument("logistic lasso: empty design matrix");
  if (xs.rows() != ys.size())
    throw std::invalid_argument("logistic lasso: row/label count mismatch");
}

}  // namespace

double logistic_objective(const Eigen::VectorXd& beta, const Eigen::MatrixXd& xs,
                          const Eigen::VectorXd& ys, double lambda) {
  check_dims(xs, ys);
  if (beta.size() != xs.cols())
    throw std::invalid_argument("logistic_objective: beta dimension mismatch");
  if (lambda < 0) throw std::invalid_argument("logistic_objective: lambda must be >= 0");
  return smooth_loss(beta, xs, ys) + lambda * beta.lpNorm<1>();
}

Eigen::VectorXd loss_gradient(const Eigen::VectorXd& beta, const Eigen::MatrixXd& xs,
                              const Eigen::VectorXd& ys) {
  check_dims(xs, ys);
  if (beta.size() != xs.cols())
    throw std::invalid_argument("loss_gradient: beta dimension mismatch");
  const Eigen::VectorXd margins = xs * beta;
  Eigen::VectorXd residual(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i)
    residual[i] = sigmoid(margins[i]) - ys[i];
  return xs.transpose() * residual / static_cast<double>(xs.rows());
}

double kkt_residual(const Eigen::VectorXd& beta, const Eigen::MatrixXd& xs,
                    const Eigen::VectorXd& ys, double lambda) {
  const Eigen::VectorXd grad = loss_gradient(beta, xs, ys);
  double worst = 0.0;
  for (Eigen::Index j = 0; j < beta.size(); ++j) {
    double r;
    if (beta[j] == 0.0)
      r = std::max(std::abs(grad[j]) - lambda, 0.0);
    else
      r = std::abs(grad[j] + lambda * (beta[j] > 0 ? 1.0 : -1.0));
    worst = std::max(worst, r);
  }
  return worst;
}

LogisticLassoFit fit_logistic_lasso(const Eigen::MatrixXd& xs,
                                    const Eigen::VectorXd& ys, double lambda,
                                    double tol, int max_iter,
                                    const Eigen::VectorXd* warm_start) {
  check_dims(xs, ys);
  if (lambda < 0) throw std::invalid_argument("fit_logistic_lasso: lambda must be >= 0");
  if (tol <= 0) throw std::invalid_argument("fit_logistic_lasso: tol must be positive");
  if (max_iter <= 0) throw std::invalid_argument("fit_logistic_lasso: max_iter must be positive");

  const Eigen::Index d = xs.cols();
  Eigen::VectorXd beta = warm_start && warm_start->size() == d
                             ? *warm_start
                             : Eigen::VectorXd::Zero(d);

  // Smooth-part Lipschitz bound ||X||_F^2 / (4n) seeds the step size; the
  // backtracking condition then certifies each accepted step.
  const double lips = xs.squaredNorm() / (4.0 * static_cast<double>(xs.rows()));
  double step = lips > 0 ? 1.0 / lips : 1.0;

  LogisticLassoFit fit;
  fit.lambda = lambda;
  double loss = smooth_loss(beta, xs, ys);

  int iter = 0;
  for (; iter < max_iter; ++iter) {
    const Eigen::VectorXd grad = loss_gradient(beta, xs, ys);

    fit.kkt_residual = [&] {
      double worst = 0.0;
      for (Eigen::Index j = 0; j < d; ++j) {
        const double r = beta[j] == 0.0
                             ? std::max(std::abs(grad[j]) - lambda, 0.0)
                             : std::abs(grad[j] + lambda * (beta[j] > 0 ? 1.0 : -1.0));
        worst = std::max(worst, r);
      }
      return worst;
    }();
    if (fit.kkt_residual <= tol) {
      fit.converged = true;
      break;
    }

    // Backtrack until the quadratic upper model holds at the candidate.
    Eigen::VectorXd next;
    double next_loss = 0.0;
    bool step_failed = false;
    for (;;) {
      next = soft_threshold(beta - step * grad, step * lambda);
      next_loss = smooth_loss(next, xs, ys);
      const Eigen::VectorXd diff = next - beta;
      const double model =
          loss + grad.dot(diff) + diff.squaredNorm() / (2.0 * step);
      if (next_loss <= model + 1e-15 * std::abs(model)) break;
      step *= 0.5;
      if (step < 1e-18) {
        step_failed = true;
        break;
      }
    }
    if (step_failed) break;  // stalled at numeric floor; report non-converged
    if ((next - beta).lpNorm<Eigen::Infinity>() == 0.0) {
      // Prox step is a fixed point at this tolerance; nothing left to move.
      fit.converged = fit.kkt_residual <= tol;
      break;
    }
    beta = next;
    loss = next_loss;
    step *= 1.25;  // cautious growth keeps steps near 1/L without re-probing
  }

  fit.coefficients = beta;
  fit.iterations = iter;
  fit.objective = loss + lambda * beta.lpNorm<1>();
  fit.kkt_residual = kkt_residual(beta, xs, ys, lambda);
  if (fit.kkt_residual <= tol) fit.converged = true;
  return fit;
}

LambdaPath lambda_grid(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys,
                       int count) {
  check_dims(xs, ys);
  if (count < 2) throw std::invalid_argument("lambda_grid: count must be >= 2");
  const double lambda_max =
      loss_gradient(Eigen::VectorXd::Zero(xs.cols()), xs, ys)
          .lpNorm<Eigen::Infinity>();
  if (lambda_max <= 0.0)
    throw std::invalid_argument("lambda_grid: degenerate design, grad(0) is zero");
  LambdaPath path;
  path.lambdas.resize(static_cast<std::size_t>(count));
  const double ratio = 1e-3;
  for (int i = 0; i < count; ++i)
    path.lambdas[static_cast<std::size_t>(i)] =
        lambda_max * std::pow(ratio, static_cast<double>(i) / (count - 1));
  return path;
}

double cv_lambda_1se(const Eigen::MatrixXd& xs, const Eigen::VectorXd& ys,
                     int folds, LambdaPath& grid, std::uint64_t seed) {
  check_dims(xs, ys);
  if (folds < 2) throw std::invalid_argument("cv_lambda_1se: folds must be >= 2");
  const Eigen::Index n = xs.rows();
  if (n < folds) throw std::invalid_argument("cv_lambda_1se: fewer rows than folds");
  if (grid.lambdas.empty()) throw std::invalid_argument("cv_lambda_1se: empty grid");
  const std::size_t L = grid.lambdas.size();

  std::vector<std::size_t> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  Rng rng(seed);
  shuffle(perm, rng);

  // errors[l][f] = validation Brier score of fold f at grid value l
  std::vector<std::vector<double>> errors(L, std::vector<double>(static_cast<std::size_t>(folds)));
  for (int f = 0; f < folds; ++f) {
    const std::size_t begin = static_cast<std::size_t>(f) * static_cast<std::size_t>(n) /
                              static_cast<std::size_t>(folds);
    const std::size_t end = (static_cast<std::size_t>(f) + 1) * static_cast<std::size_t>(n) /
                            static_cast<std::size_t>(folds);
    const std::size_t n_val = end - begin;
    const std::size_t n_train = static_cast<std::size_t>(n) - n_val;
    Eigen::MatrixXd xtr(n_train, xs.cols());
    Eigen::VectorXd ytr(n_train);
    Eigen::MatrixXd xva(n_val, xs.cols());
    Eigen::VectorXd yva(n_val);
    std::size_t it = 0, iv = 0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      const std::size_t row = perm[i];
      if (i >= begin && i < end) {
        xva.row(static_cast<Eigen::Index>(iv)) = xs.row(static_cast<Eigen::Index>(row));
        yva[static_cast<Eigen::Index>(iv++)] = ys[static_cast<Eigen::Index>(row)];
      } else {
        xtr.row(static_cast<Eigen::Index>(it)) = xs.row(static_cast<Eigen::Index>(row));
        ytr[static_cast<Eigen::Index>(it++)] = ys[static_cast<Eigen::Index>(row)];
      }
    }
    Eigen::VectorXd warm = Eigen::VectorXd::Zero(xs.cols());
    for (std::size_t l = 0; l < L; ++l) {
      const auto fit = fit_logistic_lasso(xtr, ytr, grid.lambdas[l], 1e-6, 100000, &warm);
      warm = fit.coefficients;
      const Eigen::VectorXd margins = xva * fit.coefficients;
      double err = 0.0;
      for (Eigen::Index i = 0; i < margins.size(); ++i) {
        const double diff = sigmoid(margins[i]) - yva[i];
        err += diff * diff;
      }
      errors[l][static_cast<std::size_t>(f)] = err / static_cast<double>(n_val);
    }
  }

  grid.cv_mean.resize(L);
  grid.cv_se.resize(L);
  for (std::size_t l = 0; l < L; ++l) {
    double mean = 0.0;
    for (double e : errors[l]) mean += e;
    mean /= static_cast<double>(folds);
    double var = 0.0;
    for (double e : errors[l]) var += (e - mean) * (e - mean);
    var /= static_cast<double>(folds > 1 ? folds - 1 : 1);
    grid.cv_mean[l] = mean;
    grid.cv_se[l] = std::sqrt(var / static_cast<double>(folds));
  }

  std::size_t best = 0;
  for (std::size_t l = 1; l < L; ++l)
    if (grid.cv_mean[l] < grid.cv_mean[best]) best = l;
  const double threshold = grid.cv_mean[best] + grid.cv_se[best];
  for (std::size_t l = 0; l < L; ++l)  // lambdas descend, first hit is largest
    if (grid.cv_mean[l] <= threshold) return grid.lambdas[l];
  return grid.lambdas[best];
}

double select_lambda_theory(std::size_t n, double d, double c) {
  if (n == 0) throw std::invalid_argument("select_lambda_theory: n must be positive");
  if (d < 1) throw std::invalid_argument("select_lambda_theory: d must be >= 1");
  if (c <= 0) throw std::invalid_argument("select_lambda_theory: c must be positive");
  return c * std::sqrt(std::log(d) / static_cast<double>(n));
}

double select_tau_logistic(std::size_t n_q, std::size_t n_p, int s, int d,
                           double c_tau) {
  if (n_q == 0 || n_p == 0)
    throw std::invalid_argument("select_tau_logistic: sizes must be positive");
  if (s <= 0 || d <= 0)
    throw std::invalid_argument("select_tau_logistic: s, d must be positive");
  if (c_tau <= 0) throw std::invalid_argument("select_tau_logistic: c_tau must be positive");
  const double n = static_cast<double>(std::max(n_q, n_p));
  return c_tau *
         std::sqrt(static_cast<double>(s) * std::log(static_cast<double>(d)) /
                   static_cast<double>(n_q)) *
         std::log(n);
}

}  // namespace tabkit
