#include "tabkit/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tabkit {

namespace {

constexpr std::size_t kLeafSize = 16;

/// (squared distance, index) with "worse" meaning farther, ties broken so the
/// larger index is worse. The query heap keeps the k best under this order.
struct Candidate {
  double dist = 0.0;
  std::size_t index = 0;

  bool worse_than(const Candidate& other) const {
    if (dist != other.dist) return dist > other.dist;
    return index > other.index;
  }
};

struct CandidateHeapLess {
  bool operator()(const Candidate& a, const Candidate& b) const {
    return b.worse_than(a);  // max-heap on "worse"
  }
};

}  // namespace

NeighborIndex::NeighborIndex(std::vector<Point> points) {
  if (points.empty())
    throw std::invalid_argument("NeighborIndex: point list must be nonempty");
  count_ = points.size();
  dim_ = static_cast<int>(points[0].size());
  if (dim_ == 0) throw std::invalid_argument("NeighborIndex: zero-dimensional points");
  coords_.reserve(count_ * static_cast<std::size_t>(dim_));
  for (const Point& p : points) {
    if (static_cast<int>(p.size()) != dim_)
      throw std::invalid_argument("NeighborIndex: inconsistent point dimensions");
    for (double v : p) {
      if (!std::isfinite(v))
        throw std::invalid_argument("NeighborIndex: coordinates must be finite");
      coords_.push_back(v);
    }
  }
  order_.resize(count_);
  std::iota(order_.begin(), order_.end(), std::size_t{0});

  std::vector<double> lo(static_cast<std::size_t>(dim_));
  std::vector<double> hi(static_cast<std::size_t>(dim_));
  for (int d = 0; d < dim_; ++d) {
    double mn = coord(0, d), mx = coord(0, d);
    for (std::size_t i = 1; i < count_; ++i) {
      mn = std::min(mn, coord(i, d));
      mx = std::max(mx, coord(i, d));
    }
    lo[static_cast<std::size_t>(d)] = mn;
    hi[static_cast<std::size_t>(d)] = mx;
  }
  nodes_.reserve(2 * count_ / kLeafSize + 2);
  root_ = build(0, count_, lo, hi);
}

std::size_t NeighborIndex::build(std::size_t begin, std::size_t end,
                                 std::vector<double>& lo, std::vector<double>& hi) {
  const std::size_t id = nodes_.size();
  nodes_.emplace_back();
  if (end - begin <= kLeafSize) {
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }
  // Split the widest dimension of the bounding box at the coordinate median.
  int split_dim = 0;
  double widest = -1.0;
  for (int d = 0; d < dim_; ++d) {
    const double w = hi[static_cast<std::size_t>(d)] - lo[static_cast<std::size_t>(d)];
    if (w > widest) {
      widest = w;
      split_dim = d;
    }
  }
  if (widest <= 0.0) {
    // All remaining points identical; keep them in one leaf.
    nodes_[id].begin = begin;
    nodes_[id].end = end;
    return id;
  }
  const std::size_t mid = begin + (end - begin) / 2;
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) {
                     const double ca = coord(a, split_dim);
                     const double cb = coord(b, split_dim);
                     if (ca != cb) return ca < cb;
                     return a < b;
                   });
  const double split_value = coord(order_[mid], split_dim);

  const double saved_hi = hi[static_cast<std::size_t>(split_dim)];
  hi[static_cast<std::size_t>(split_dim)] = split_value;
  const std::size_t left = build(begin, mid, lo, hi);
  hi[static_cast<std::size_t>(split_dim)] = saved_hi;

  const double saved_lo = lo[static_cast<std::size_t>(split_dim)];
  lo[static_cast<std::size_t>(split_dim)] = split_value;
  const std::size_t right = build(mid, end, lo, hi);
  lo[static_cast<std::size_t>(split_dim)] = saved_lo;

  nodes_[id].split_dim = split_dim;
  nodes_[id].split_value = split_value;
  nodes_[id].left = left;
  nodes_[id].right = right;
  return id;
}

double NeighborIndex::squared_distance(const Point& query, std::size_t i) const {
  double s = 0.0;
  const double* row = coords_.data() + i * static_cast<std::size_t>(dim_);
  for (int d = 0; d < dim_; ++d) {
    const double diff = query[static_cast<std::size_t>(d)] - row[d];
    s += diff * diff;
  }
  return s;
}

std::vector<std::size_t> NeighborIndex::k_nearest(const Point& query,
                                                  std::size_t k) const {
  if (k == 0) throw std::invalid_argument("k_nearest: k must be positive");
  if (k > count_) throw std::invalid_argument("k_nearest: k exceeds stored count");
  if (query.size() != static_cast<std::size_t>(dim_))
    throw std::invalid_argument("k_nearest: query dimension mismatch");

  std::vector<Candidate> heap;
  heap.reserve(k);
  const CandidateHeapLess less;

  // Depth-first with the closer child first; prune a subtree only when every
  // point in it is strictly farther than the current worst candidate. An
  // equal-distance point must still be visited because a smaller insertion
  // index can displace the worst.
  struct Frame {
    std::size_t node;
    double gap;  // squared distance from query to the node's half-space
  };
  std::vector<Frame> stack;
  stack.push_back({root_, 0.0});
  while (!stack.empty()) {
    const Frame frame = stack.back();
    stack.pop_back();
    if (heap.size() == k && frame.gap > heap.front().dist) continue;
    const Node& node = nodes_[frame.node];
    if (node.split_dim < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) {
        const std::size_t idx = order_[i];
        const Candidate cand{squared_distance(query, idx), idx};
        if (heap.size() < k) {
          heap.push_back(cand);
          std::push_heap(heap.begin(), heap.end(), less);
        } else if (heap.front().worse_than(cand)) {
          std::pop_heap(heap.begin(), heap.end(), less);
          heap.back() = cand;
          std::push_heap(heap.begin(), heap.end(), less);
        }
      }
      continue;
    }
    const double q = query[static_cast<std::size_t>(node.split_dim)];
    const double diff = q - node.split_value;
    const double far_gap = std::max(frame.gap, diff * diff);
    if (diff < 0) {
      stack.push_back({node.right, far_gap});
      stack.push_back({node.left, frame.gap});
    } else {
      stack.push_back({node.left, far_gap});
      stack.push_back({node.right, frame.gap});
    }
  }

  std::sort(heap.begin(), heap.end(),
            [](const Candidate& a, const Candidate& b) { return b.worse_than(a); });
  std::vector<std::size_t> out;
  out.reserve(k);
  for (const Candidate& c : heap) out.push_back(c.index);
  return out;
}

KnnRegressor::KnnRegressor(std::shared_ptr<const NeighborIndex> index,
                           std::vector<int> labels, std::size_t k)
    : index_(std::move(index)), labels_(std::move(labels)), k_(k) {
  if (!index_) throw std::invalid_argument("KnnRegressor: null index");
  if (labels_.size() != index_->size())
    throw std::invalid_argument("KnnRegressor: label count mismatch");
  if (k_ == 0 || k_ > index_->size())
    throw std::invalid_argument("KnnRegressor: k out of range");
}

double KnnRegressor::estimate(const Point& query) const {
  const auto neighbors = index_->k_nearest(query, k_);
  int ones = 0;
  for (std::size_t idx : neighbors) ones += labels_[idx];
  return static_cast<double>(ones) / static_cast<double>(k_);
}

std::shared_ptr<const NeighborIndex> build_index(std::vector<Point> points) {
  return std::make_shared<const NeighborIndex>(std::move(points));
}

namespace {

// pow can land a hair under an exact integer power; nudge before flooring so
// e.g. 1000^(1/3) floors to 10, not 9.
int floored_rate(double value) {
  const int k = static_cast<int>(std::floor(value + 1e-9));
  return std::max(k, 1);
}

}  // namespace

int select_k_target(std::size_t n_q, double beta, int d, double c_q) {
  if (n_q == 0) throw std::invalid_argument("select_k_target: n_q must be positive");
  if (beta <= 0 || d <= 0 || c_q <= 0)
    throw std::invalid_argument("select_k_target: parameters must be positive");
  const double expo = 2.0 * beta / (2.0 * beta + static_cast<double>(d));
  return floored_rate(c_q * std::pow(static_cast<double>(n_q), expo));
}

int select_k_source(std::size_t n_p, double gamma, double beta, int d, double c_p) {
  if (n_p == 0) throw std::invalid_argument("select_k_source: n_p must be positive");
  if (gamma <= 0 || beta <= 0 || d <= 0 || c_p <= 0)
    throw std::invalid_argument("select_k_source: parameters must be positive");
  const double expo =
      2.0 * gamma * beta / (2.0 * gamma * beta + static_cast<double>(d));
  return floored_rate(c_p * std::pow(static_cast<double>(n_p), expo));
}

double select_tau_nonparam(std::size_t n_q, std::size_t n_p, std::size_t k_q,
                           double c_tau) {
  if (n_q == 0 || n_p == 0 || k_q == 0)
    throw std::invalid_argument("select_tau_nonparam: sizes must be positive");
  if (c_tau <= 0) throw std::invalid_argument("select_tau_nonparam: c_tau must be positive");
  const double n = static_cast<double>(std::max(n_q, n_p));
  return c_tau * std::log(n) / std::sqrt(static_cast<double>(k_q));
}

}  // namespace tabkit
