#include <benchmark/benchmark.h>

#include <cmath>

#include "tabkit/rng.hpp"
#include "tabkit/sparse_logistic.hpp"

namespace {

struct Instance {
  Eigen::MatrixXd xs;
  Eigen::VectorXd ys;
};

Instance make_instance(int n, int d, std::uint64_t seed) {
  tabkit::Rng rng(seed);
  Instance inst;
  inst.xs.resize(n, d);
  inst.ys.resize(n);
  Eigen::VectorXd beta = Eigen::VectorXd::Zero(d);
  for (int j = 0; j < 10 && j < d; ++j) beta[j] = 0.5;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) inst.xs(i, j) = rng.normal();
    const double t = inst.xs.row(i).dot(beta);
    inst.ys[i] = rng.bernoulli(1.0 / (1.0 + std::exp(-t)));
  }
  return inst;
}

void BM_LassoFit(benchmark::State& state) {
  const auto inst = make_instance(static_cast<int>(state.range(0)),
                                  static_cast<int>(state.range(1)), 1);
  const double lambda_max =
      tabkit::loss_gradient(Eigen::VectorXd::Zero(inst.xs.cols()), inst.xs, inst.ys)
          .lpNorm<Eigen::Infinity>();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        tabkit::fit_logistic_lasso(inst.xs, inst.ys, lambda_max / 10.0));
  }
}
BENCHMARK(BM_LassoFit)->Args({100, 50})->Args({200, 200})->Args({700, 200});

void BM_CvPath(benchmark::State& state) {
  const auto inst = make_instance(200, 200, 2);
  for (auto _ : state) {
    tabkit::LambdaPath grid = tabkit::lambda_grid(inst.xs, inst.ys, 50);
    benchmark::DoNotOptimize(tabkit::cv_lambda_1se(inst.xs, inst.ys, 5, grid, 7));
  }
}
BENCHMARK(BM_CvPath);

}  // namespace
