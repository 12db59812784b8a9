#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tabkit {

/// Feature vector in R^d.
using Point = std::vector<double>;

enum class SampleOrigin { Target, Source };

/// Finite set of (point, binary label) pairs drawn from the target or the
/// source distribution.
struct LabeledSample {
  std::vector<Point> points;
  std::vector<int> labels;
  SampleOrigin origin = SampleOrigin::Target;

  LabeledSample() = default;
  LabeledSample(std::vector<Point> pts, std::vector<int> labs, SampleOrigin o)
      : points(std::move(pts)), labels(std::move(labs)), origin(o) {
    if (points.size() != labels.size())
      throw std::invalid_argument("LabeledSample: points/labels size mismatch");
    for (int y : labels)
      if (y != 0 && y != 1)
        throw std::invalid_argument("LabeledSample: labels must be 0 or 1");
  }

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
  int dim() const { return points.empty() ? 0 : static_cast<int>(points[0].size()); }
};

/// Conditional label probability x -> P(Y=1|X=x). The wrapped function is
/// clipped into [0,1] at construction so downstream code may rely on the
/// range unconditionally.
class RegressionSurface {
 public:
  RegressionSurface() = default;
  explicit RegressionSurface(std::function<double(const Point&)> fn)
      : fn_(std::move(fn)) {}

  double operator()(const Point& x) const {
    return std::clamp(fn_(x), 0.0, 1.0);
  }

  bool valid() const { return static_cast<bool>(fn_); }

 private:
  std::function<double(const Point&)> fn_;
};

/// Deterministic binary classifier x -> {0,1}. Immutable after construction;
/// copies share the underlying closure.
class DecisionRule {
 public:
  DecisionRule() = default;
  explicit DecisionRule(std::function<int(const Point&)> fn) : fn_(std::move(fn)) {}

  int operator()(const Point& x) const { return fn_(x); }
  bool valid() const { return static_cast<bool>(fn_); }

 private:
  std::function<int(const Point&)> fn_;
};

/// Structural constants of a (Q,P) problem: margin exponent alpha with
/// constant c_alpha, transfer exponent gamma with constant c_gamma, target
/// smoothness beta, and ambient dimension d.
struct ProblemParams {
  double alpha = 1.0;
  double c_alpha = 1.0;
  double gamma = 1.0;
  double c_gamma = 1.0;
  double beta = 1.0;
  int d = 2;

  void validate() const {
    if (alpha < 0) throw std::invalid_argument("ProblemParams: alpha must be >= 0");
    if (c_alpha <= 0) throw std::invalid_argument("ProblemParams: c_alpha must be > 0");
    if (gamma <= 0) throw std::invalid_argument("ProblemParams: gamma must be > 0");
    if (c_gamma <= 0) throw std::invalid_argument("ProblemParams: c_gamma must be > 0");
    if (beta <= 0 || beta > 1)
      throw std::invalid_argument("ProblemParams: beta must be in (0,1]");
    if (d <= 0) throw std::invalid_argument("ProblemParams: d must be positive");
  }
};

/// Monte-Carlo estimate together with its standard error and sample count.
struct McEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::size_t n = 0;
};

}  // namespace tabkit
