#include "tabkit/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "tabkit/rng.hpp"

namespace tabkit {

namespace {

double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  const double e = std::exp(t);
  return e / (1.0 + e);
}

KnnRegressor make_regressor(const LabeledSample& data, int k) {
  auto index = build_index(data.points);
  return KnnRegressor(std::move(index), data.labels, static_cast<std::size_t>(k));
}

int resolve_k_target(const LabeledSample& dq, const ProblemParams& params,
                     const KnnOverrides& ov) {
  const int k = ov.k_q ? *ov.k_q : select_k_target(dq.size(), params.beta, params.d, ov.c_q);
  if (k <= 0 || static_cast<std::size_t>(k) > dq.size())
    throw std::invalid_argument("knn fit: target sample smaller than selected k");
  return k;
}

int resolve_k_source(const LabeledSample& dp, const ProblemParams& params,
                     const KnnOverrides& ov) {
  const int k = ov.k_p ? *ov.k_p
                       : select_k_source(dp.size(), params.gamma, params.beta,
                                         params.d, ov.c_p);
  if (k <= 0 || static_cast<std::size_t>(k) > dp.size())
    throw std::invalid_argument("knn fit: source sample smaller than selected k");
  return k;
}

LassoOptions with_seed_shift(const LassoOptions& opt, std::uint64_t shift) {
  LassoOptions out = opt;
  out.seed = mix64(opt.seed ^ shift);
  return out;
}

/// Fits one lasso-logistic model; picks lambda per the options.
LogisticLassoFit fit_lasso_model(const LabeledSample& data, const LassoOptions& opt) {
  if (data.empty()) throw std::invalid_argument("lasso fit: empty sample");
  auto [xs, ys] = to_design(data);
  double lambda;
  if (opt.lambda) {
    lambda = *opt.lambda;
  } else if (opt.theory_params) {
    lambda = select_lambda_theory(data.size(), static_cast<double>(data.dim()),
                                  opt.theory_c);
  } else {
    LambdaPath grid = lambda_grid(xs, ys, opt.grid_count);
    lambda = cv_lambda_1se(xs, ys, opt.cv_folds, grid, opt.seed);
  }
  return fit_logistic_lasso(xs, ys, lambda);
}

DecisionRule linear_rule(const Eigen::VectorXd& beta) {
  return DecisionRule([beta](const Point& x) {
    double t = 0.0;
    for (Eigen::Index j = 0; j < beta.size(); ++j)
      t += beta[j] * x[static_cast<std::size_t>(j)];
    return t >= 0.0 ? 1 : 0;
  });
}

}  // namespace

int tab_predict(double eta_hat_q, double tau, int source_label) {
  if (eta_hat_q < 0 || eta_hat_q > 1)
    throw std::invalid_argument("tab_predict: estimate must lie in [0,1]");
  if (tau < 0) throw std::invalid_argument("tab_predict: tau must be >= 0");
  if (std::abs(eta_hat_q - 0.5) >= tau) return eta_hat_q >= 0.5 ? 1 : 0;
  return source_label;
}

TabClassifier::TabClassifier(RegressionSurface target_estimate, double tau,
                             DecisionRule source)
    : target_(std::move(target_estimate)), tau_(tau), source_(std::move(source)) {
  if (tau_ < 0) throw std::invalid_argument("TabClassifier: tau must be >= 0");
  if (!target_.valid() || !source_.valid())
    throw std::invalid_argument("TabClassifier: missing component");
}

int TabClassifier::predict(const Point& x) const {
  const double eta = target_(x);
  if (std::abs(eta - 0.5) >= tau_) return eta >= 0.5 ? 1 : 0;
  return source_(x);
}

DecisionRule TabClassifier::as_rule() const {
  TabClassifier copy = *this;
  return DecisionRule([copy](const Point& x) { return copy.predict(x); });
}

MethodFit fit_q_knn(const LabeledSample& dq, const ProblemParams& params,
                    const KnnOverrides& ov) {
  const int k = resolve_k_target(dq, params, ov);
  KnnRegressor reg = make_regressor(dq, k);
  MethodFit fit;
  fit.k_q = k;
  fit.rule = DecisionRule(
      [reg](const Point& x) { return reg.estimate(x) >= 0.5 ? 1 : 0; });
  return fit;
}

MethodFit fit_p_knn(const LabeledSample& dp, const ProblemParams& params,
                    const KnnOverrides& ov) {
  const int k = resolve_k_source(dp, params, ov);
  KnnRegressor reg = make_regressor(dp, k);
  MethodFit fit;
  fit.k_p = k;
  fit.rule = DecisionRule(
      [reg](const Point& x) { return reg.estimate(x) >= 0.5 ? 1 : 0; });
  return fit;
}

MethodFit fit_tab_knn(const LabeledSample& dq, const LabeledSample& dp,
                      const ProblemParams& params, const KnnOverrides& ov) {
  const int k_q = resolve_k_target(dq, params, ov);
  const int k_p = resolve_k_source(dp, params, ov);
  const double tau =
      ov.tau ? *ov.tau
             : select_tau_nonparam(dq.size(), dp.size(),
                                   static_cast<std::size_t>(k_q), ov.c_tau);
  KnnRegressor target = make_regressor(dq, k_q);
  KnnRegressor source = make_regressor(dp, k_p);
  RegressionSurface target_surface(
      [target](const Point& x) { return target.estimate(x); });
  DecisionRule source_rule(
      [source](const Point& x) { return source.estimate(x) >= 0.5 ? 1 : 0; });
  TabClassifier tab(std::move(target_surface), tau, std::move(source_rule));
  MethodFit fit;
  fit.k_q = k_q;
  fit.k_p = k_p;
  fit.tau = tau;
  fit.rule = tab.as_rule();
  return fit;
}

std::pair<double, double> weighted_scheme(std::size_t n_q, std::size_t n_p,
                                          double beta, double gamma, int d) {
  if (n_q == 0 || n_p == 0)
    throw std::invalid_argument("weighted_scheme: sizes must be positive");
  if (beta <= 0 || gamma <= 0 || d <= 0)
    throw std::invalid_argument("weighted_scheme: parameters must be positive");
  if (gamma == 1.0) return {0.5, 0.5};  // exponent vanishes exactly
  const double dd = static_cast<double>(d);
  const double inner =
      static_cast<double>(n_q) +
      std::pow(static_cast<double>(n_p), (2.0 * beta + dd) / (2.0 * gamma * beta + dd));
  const double ratio = std::pow(inner, (gamma - 1.0) * beta / (2.0 * beta + dd));
  const double w_p = ratio / (1.0 + ratio);
  return {1.0 - w_p, w_p};
}

MethodFit fit_weighted_knn(const LabeledSample& dq, const LabeledSample& dp,
                           const ProblemParams& params, const KnnOverrides& ov) {
  const int k_q = resolve_k_target(dq, params, ov);
  const int k_p = resolve_k_source(dp, params, ov);
  const auto [w_q, w_p] =
      weighted_scheme(dq.size(), dp.size(), params.beta, params.gamma, params.d);
  KnnRegressor target = make_regressor(dq, k_q);
  KnnRegressor source = make_regressor(dp, k_p);
  MethodFit fit;
  fit.k_q = k_q;
  fit.k_p = k_p;
  fit.rule = DecisionRule([target, source, w_q = w_q, w_p = w_p](const Point& x) {
    return w_q * target.estimate(x) + w_p * source.estimate(x) >= 0.5 ? 1 : 0;
  });
  return fit;
}

std::vector<int> default_pooled_k_grid(std::size_t n) {
  const double k_max = std::max(1.0, 2.0 * std::sqrt(static_cast<double>(n)));
  const int count = 15;
  std::vector<int> grid;
  for (int i = 0; i < count; ++i) {
    const double v = std::pow(k_max, static_cast<double>(i) / (count - 1));
    int k = static_cast<int>(std::lround(v));
    if (k % 2 == 0) ++k;  // odd values avoid voting ties
    k = std::max(1, std::min(k, static_cast<int>(n)));
    if (grid.empty() || grid.back() != k) grid.push_back(k);
  }
  return grid;
}

MethodFit fit_pooled_knn_cv(const LabeledSample& dq, const LabeledSample& dp,
                            int folds, const std::vector<int>& k_grid,
                            std::uint64_t seed) {
  if (k_grid.empty()) throw std::invalid_argument("fit_pooled_knn_cv: empty k grid");
  if (folds < 2) throw std::invalid_argument("fit_pooled_knn_cv: folds must be >= 2");
  std::vector<Point> points = dq.points;
  std::vector<int> labels = dq.labels;
  points.insert(points.end(), dp.points.begin(), dp.points.end());
  labels.insert(labels.end(), dp.labels.begin(), dp.labels.end());
  const std::size_t n = points.size();
  if (n < static_cast<std::size_t>(folds))
    throw std::invalid_argument("fit_pooled_knn_cv: pooled sample smaller than folds");

  int best_k = k_grid.front();
  if (k_grid.size() > 1) {
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    shuffle(perm, rng);

    // Grid positions sorted by k so one neighbor list per query serves all k.
    std::vector<std::size_t> by_k(k_grid.size());
    std::iota(by_k.begin(), by_k.end(), std::size_t{0});
    std::sort(by_k.begin(), by_k.end(), [&](std::size_t a, std::size_t b) {
      return k_grid[a] < k_grid[b];
    });
    const int k_largest = k_grid[by_k.back()];

    std::vector<double> cv_error(k_grid.size(), 0.0);
    for (int f = 0; f < folds; ++f) {
      const std::size_t begin = static_cast<std::size_t>(f) * n / static_cast<std::size_t>(folds);
      const std::size_t end = (static_cast<std::size_t>(f) + 1) * n / static_cast<std::size_t>(folds);
      std::vector<Point> train_pts;
      std::vector<int> train_labs;
      train_pts.reserve(n - (end - begin));
      train_labs.reserve(n - (end - begin));
      for (std::size_t i = 0; i < n; ++i) {
        if (i >= begin && i < end) continue;
        train_pts.push_back(points[perm[i]]);
        train_labs.push_back(labels[perm[i]]);
      }
      auto index = build_index(train_pts);
      const int k_cap = static_cast<int>(train_pts.size());
      for (std::size_t i = begin; i < end; ++i) {
        const Point& x = points[perm[i]];
        const int y = labels[perm[i]];
        const auto neighbors = index->k_nearest(
            x, static_cast<std::size_t>(std::min(k_largest, k_cap)));
        int ones = 0;
        std::size_t taken = 0;
        for (std::size_t g : by_k) {
          const std::size_t k =
              static_cast<std::size_t>(std::min(k_grid[g], k_cap));
          while (taken < k && taken < neighbors.size()) {
            ones += train_labs[neighbors[taken]];
            ++taken;
          }
          const int pred = 2 * ones >= static_cast<int>(taken) ? 1 : 0;
          if (pred != y) cv_error[g] += 1.0;
        }
      }
    }
    std::size_t best = 0;
    for (std::size_t g = 1; g < k_grid.size(); ++g) {
      if (cv_error[g] < cv_error[best] ||
          (cv_error[g] == cv_error[best] && k_grid[g] < k_grid[best]))
        best = g;
    }
    best_k = k_grid[best];
  }

  const int k = std::min(best_k, static_cast<int>(n));
  auto index = build_index(std::move(points));
  KnnRegressor reg(std::move(index), std::move(labels), static_cast<std::size_t>(k));
  MethodFit fit;
  fit.k_q = k;
  fit.rule = DecisionRule(
      [reg](const Point& x) { return reg.estimate(x) >= 0.5 ? 1 : 0; });
  return fit;
}

MethodFit fit_q_lasso(const LabeledSample& dq, const LassoOptions& opt) {
  const auto model = fit_lasso_model(dq, with_seed_shift(opt, 0x51));
  MethodFit fit;
  fit.lambda_q = model.lambda;
  fit.rule = linear_rule(model.coefficients);
  return fit;
}

MethodFit fit_p_lasso(const LabeledSample& dp, const LassoOptions& opt) {
  const auto model = fit_lasso_model(dp, with_seed_shift(opt, 0x50));
  MethodFit fit;
  fit.lambda_p = model.lambda;
  fit.rule = linear_rule(model.coefficients);
  return fit;
}

MethodFit fit_pooled_lasso(const LabeledSample& dq, const LabeledSample& dp,
                           const LassoOptions& opt) {
  std::vector<Point> points = dq.points;
  std::vector<int> labels = dq.labels;
  points.insert(points.end(), dp.points.begin(), dp.points.end());
  labels.insert(labels.end(), dp.labels.begin(), dp.labels.end());
  LabeledSample pooled(std::move(points), std::move(labels), SampleOrigin::Target);
  const auto model = fit_lasso_model(pooled, with_seed_shift(opt, 0x5b));
  MethodFit fit;
  fit.lambda_q = model.lambda;
  fit.rule = linear_rule(model.coefficients);
  return fit;
}

MethodFit fit_tab_logistic(const LabeledSample& dq, const LabeledSample& dp,
                           int s, const LassoOptions& opt) {
  const auto model_q = fit_lasso_model(dq, with_seed_shift(opt, 0x51));
  const auto model_p = fit_lasso_model(dp, with_seed_shift(opt, 0x50));
  const double tau =
      opt.tau ? *opt.tau
              : select_tau_logistic(dq.size(), dp.size(), s, dq.dim(), opt.c_tau);
  const Eigen::VectorXd beta_q = model_q.coefficients;
  RegressionSurface target([beta_q](const Point& x) {
    double t = 0.0;
    for (Eigen::Index j = 0; j < beta_q.size(); ++j)
      t += beta_q[j] * x[static_cast<std::size_t>(j)];
    return sigmoid(t);
  });
  TabClassifier tab(std::move(target), tau, linear_rule(model_p.coefficients));
  MethodFit fit;
  fit.lambda_q = model_q.lambda;
  fit.lambda_p = model_p.lambda;
  fit.tau = tau;
  fit.rule = tab.as_rule();
  return fit;
}

std::pair<Eigen::MatrixXd, Eigen::VectorXd> to_design(const LabeledSample& sample) {
  const Eigen::Index n = static_cast<Eigen::Index>(sample.size());
  const Eigen::Index d = static_cast<Eigen::Index>(sample.dim());
  Eigen::MatrixXd xs(n, d);
  Eigen::VectorXd ys(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j)
      xs(i, j) = sample.points[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    ys[i] = sample.labels[static_cast<std::size_t>(i)];
  }
  return {std::move(xs), std::move(ys)};
}

}  // namespace tabkit
