#include <benchmark/benchmark.h>

#include <vector>

#include "tabkit/knn.hpp"
#include "tabkit/rng.hpp"

namespace {

std::vector<tabkit::Point> random_points(std::size_t n, int d, std::uint64_t seed) {
  tabkit::Rng rng(seed);
  std::vector<tabkit::Point> points(n, tabkit::Point(static_cast<std::size_t>(d)));
  for (auto& p : points)
    for (auto& v : p) v = rng.uniform01();
  return points;
}

void BM_IndexBuild(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto points = random_points(n, 2, 1);
  for (auto _ : state) {
    tabkit::NeighborIndex index(points);
    benchmark::DoNotOptimize(index.size());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                          static_cast<int64_t>(n));
}
BENCHMARK(BM_IndexBuild)->Arg(1000)->Arg(8000);

void BM_KnnQuery(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto k = static_cast<std::size_t>(state.range(1));
  const tabkit::NeighborIndex index(random_points(n, 2, 2));
  tabkit::Rng rng(3);
  std::vector<tabkit::Point> queries(256, tabkit::Point(2));
  for (auto& q : queries) q = {rng.uniform01(), rng.uniform01()};
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.k_nearest(queries[i++ % queries.size()], k));
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()));
}
BENCHMARK(BM_KnnQuery)->Args({1000, 31})->Args({8000, 31})->Args({8000, 89});

}  // namespace
