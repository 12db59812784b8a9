#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "tabkit/types.hpp"

namespace tabkit {

/// Immutable spatial index over a fixed point list, answering exact
/// k-nearest-neighbor queries under the Euclidean metric. Equal distances are
/// broken by ascending insertion index, so query results are unique and match
/// an exhaustive scan. Build is single-threaded; concurrent queries are safe.
class NeighborIndex {
 public:
  explicit NeighborIndex(std::vector<Point> points);

  std::size_t size() const { return count_; }
  int dim() const { return dim_; }

  /// Indices of the k nearest stored points, sorted by nondecreasing distance
  /// (ties by ascending index). Throws if k == 0 or k > size().
  std::vector<std::size_t> k_nearest(const Point& query, std::size_t k) const;

  /// Squared Euclidean distance from the query to stored point i.
  double squared_distance(const Point& query, std::size_t i) const;

 private:
  struct Node {
    int split_dim = -1;       // -1 marks a leaf
    double split_value = 0.0;
    std::size_t left = 0;     // children for internal nodes,
    std::size_t right = 0;    // [begin,end) into order_ for leaves
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  std::size_t build(std::size_t begin, std::size_t end,
                    std::vector<double>& lo, std::vector<double>& hi);
  double coord(std::size_t point, int d) const {
    return coords_[point * static_cast<std::size_t>(dim_) + static_cast<std::size_t>(d)];
  }

  std::size_t count_ = 0;
  int dim_ = 0;
  std::vector<double> coords_;        // row-major, insertion order
  std::vector<std::size_t> order_;    // permutation grouped by leaf
  std::vector<Node> nodes_;
  std::size_t root_ = 0;
};

/// Binary regression estimate: mean label of the k nearest stored points.
/// Output lies in {0, 1/k, ..., 1}.
class KnnRegressor {
 public:
  KnnRegressor(std::shared_ptr<const NeighborIndex> index, std::vector<int> labels,
               std::size_t k);

  double estimate(const Point& query) const;
  std::size_t k() const { return k_; }
  const NeighborIndex& index() const { return *index_; }

 private:
  std::shared_ptr<const NeighborIndex> index_;
  std::vector<int> labels_;
  std::size_t k_;
};

/// Convenience constructor mirroring the index contract.
std::shared_ptr<const NeighborIndex> build_index(std::vector<Point> points);

/// Neighbor count for the target estimate: floor(c_q * n_q^{2 beta / (2 beta + d)}),
/// never below 1.
int select_k_target(std::size_t n_q, double beta, int d, double c_q = 1.0);

/// Neighbor count for the source estimate: floor(c_p * n_p^{2 gamma beta / (2 gamma beta + d)}),
/// never below 1.
int select_k_source(std::size_t n_p, double gamma, double beta, int d, double c_p = 1.0);

/// Threshold rate for the nonparametric combiner:
/// c_tau * ln(max(n_q, n_p)) / sqrt(k_q).
double select_tau_nonparam(std::size_t n_q, std::size_t n_p, std::size_t k_q,
                           double c_tau = 1.0);

}  // namespace tabkit
