#include "tabkit/scenarios.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace tabkit {

namespace {

constexpr double kPi = 3.14159265358979323846;

double dot(const std::vector<double>& u, const std::vector<double>& v) {
  return std::inner_product(u.begin(), u.end(), v.begin(), 0.0);
}

double norm2(const std::vector<double>& u) { return std::sqrt(dot(u, u)); }

double frac(double a) { return a - std::floor(a); }

}  // namespace

double angle_between(const std::vector<double>& u, const std::vector<double>& v) {
  if (u.size() != v.size())
    throw std::invalid_argument("angle_between: dimension mismatch");
  const double nu = norm2(u);
  const double nv = norm2(v);
  if (nu == 0.0 || nv == 0.0)
    throw std::invalid_argument("angle_between: zero vector");
  const double c = std::clamp(dot(u, v) / (nu * nv), -1.0, 1.0);
  return std::acos(c);
}

double eta_q_nonparam(const Point& x, double amp_q) {
  return 0.5 + amp_q * std::sin(2.0 * kPi * (x[0] + x[1]));
}

double eta_p_bandlike(const Point& x, double gamma, double delta, double amp_q) {
  const double eq = eta_q_nonparam(x, amp_q);
  double value;
  if (eq >= 0.5)
    value = 0.5 + 2.0 * std::pow(eq - 0.5, gamma) - delta;
  else
    value = 0.5 - 2.0 * std::pow(0.5 - eq, gamma) + delta;
  // The raw formula exceeds [0,1] for gamma < 1; clipping preserves the Bayes
  // classifier and the sign of the signal.
  return std::clamp(value, 0.0, 1.0);
}

double eta_p_flipped(const Point& x, double gamma, double r, double amp_p) {
  const double t = x[0] + x[1];
  const double st = std::sin(2.0 * kPi * t);
  const double sigma = st > 0 ? 1.0 : (st < 0 ? -1.0 : 0.0);
  const double u = frac(2.0 * t);
  double mag;
  double sign;
  if (u < r) {
    mag = std::pow(std::sin(kPi * u / r), gamma);
    sign = -sigma;
  } else {
    mag = std::pow(std::sin(kPi * (u - r) / (1.0 - r)), gamma);
    sign = sigma;
  }
  return std::clamp(0.5 + sign * amp_p * mag, 0.0, 1.0);
}

CoefficientPair make_logistic_coeffs(int d, int s, double delta, bool exact_angle) {
  if (s <= 0 || d <= 0) throw std::invalid_argument("make_logistic_coeffs: d, s must be positive");
  if (s >= d) throw std::invalid_argument("make_logistic_coeffs: requires s < d");
  if (delta < 0 || delta > kPi)
    throw std::invalid_argument("make_logistic_coeffs: delta must lie in [0, pi]");
  CoefficientPair pair;
  pair.beta_q.assign(d, 0.0);
  pair.beta_p.assign(d, 0.0);
  const double norm_q = 0.5 * std::sqrt(static_cast<double>(s));
  const double tail_unit = 1.0 / std::sqrt(static_cast<double>(d - s));
  for (int j = 0; j < s; ++j) pair.beta_q[j] = 0.5;
  if (exact_angle) {
    // True rotation of 3*beta_q by delta in the head/tail plane; the angle
    // equals delta over the whole range [0, pi], the head flipping sign past
    // pi/2. This is the construction under which the source turns adversarial
    // for large delta.
    for (int j = 0; j < s; ++j) pair.beta_p[j] = 1.5 * std::cos(delta);
    const double tail = 3.0 * norm_q * std::sin(delta) * tail_unit;
    for (int j = s; j < d; ++j) pair.beta_p[j] = tail;
  } else {
    // Fixed head with a tan tail; the realized angle is |arctan(tan(delta)/3)|
    // and the tan diverges at pi/2.
    if (std::abs(delta - kPi / 2) < 1e-12)
      throw std::invalid_argument("make_logistic_coeffs: tan(delta) diverges at pi/2");
    for (int j = 0; j < s; ++j) pair.beta_p[j] = 1.5;
    const double tail = norm_q * std::tan(delta) * tail_unit;
    for (int j = s; j < d; ++j) pair.beta_p[j] = tail;
  }
  return pair;
}

Scenario Scenario::band_like(double gamma, double delta, double amp_q) {
  if (gamma <= 0) throw std::invalid_argument("band_like: gamma must be positive");
  if (delta < 0) throw std::invalid_argument("band_like: delta must be >= 0");
  if (amp_q <= 0 || amp_q > 0.5)
    throw std::invalid_argument("band_like: amp_q must lie in (0, 1/2]");
  Scenario sc;
  sc.kind_ = ScenarioKind::BandLike;
  sc.d_ = 2;
  sc.gamma_ = gamma;
  sc.delta_ = delta;
  sc.amp_q_ = amp_q;
  return sc;
}

Scenario Scenario::flipped_sine(double gamma, double r, double amp_q, double amp_p) {
  if (gamma <= 0) throw std::invalid_argument("flipped_sine: gamma must be positive");
  if (r < 0 || r >= 1) throw std::invalid_argument("flipped_sine: r must lie in [0,1)");
  if (amp_q <= 0 || amp_q > 0.5 || amp_p <= 0 || amp_p > 0.5)
    throw std::invalid_argument("flipped_sine: amplitudes must lie in (0, 1/2]");
  Scenario sc;
  sc.kind_ = ScenarioKind::FlippedSine;
  sc.d_ = 2;
  sc.gamma_ = gamma;
  sc.ratio_ = r;
  sc.amp_q_ = amp_q;
  sc.amp_p_ = amp_p;
  return sc;
}

Scenario Scenario::logistic_rotation(int d, int s, double delta, bool exact_angle) {
  Scenario sc;
  sc.kind_ = ScenarioKind::LogisticRotation;
  sc.d_ = d;
  sc.gamma_ = 1.0;
  sc.delta_ = delta;
  sc.s_ = s;
  sc.coeffs_ = make_logistic_coeffs(d, s, delta, exact_angle);
  return sc;
}

std::string Scenario::name() const {
  switch (kind_) {
    case ScenarioKind::BandLike: return "band";
    case ScenarioKind::FlippedSine: return "flip";
    case ScenarioKind::LogisticRotation: return "logistic";
  }
  return "";
}

std::string Scenario::kind_param_name() const {
  return kind_ == ScenarioKind::FlippedSine ? "r" : "delta";
}

double Scenario::kind_param_value() const {
  return kind_ == ScenarioKind::FlippedSine ? ratio_ : delta_;
}

double Scenario::eta_q(const Point& x) const {
  if (kind_ == ScenarioKind::LogisticRotation) {
    const double t = std::inner_product(coeffs_.beta_q.begin(),
                                        coeffs_.beta_q.end(), x.begin(), 0.0);
    return 1.0 / (1.0 + std::exp(-t));
  }
  return std::clamp(eta_q_nonparam(x, amp_q_), 0.0, 1.0);
}

double Scenario::eta_p(const Point& x) const {
  switch (kind_) {
    case ScenarioKind::BandLike:
      return eta_p_bandlike(x, gamma_, delta_, amp_q_);
    case ScenarioKind::FlippedSine:
      return eta_p_flipped(x, gamma_, ratio_, amp_p_);
    case ScenarioKind::LogisticRotation: {
      const double t = std::inner_product(coeffs_.beta_p.begin(),
                                          coeffs_.beta_p.end(), x.begin(), 0.0);
      return 1.0 / (1.0 + std::exp(-t));
    }
  }
  return 0.5;
}

RegressionSurface Scenario::eta_q_surface() const {
  Scenario copy = *this;
  return RegressionSurface([copy](const Point& x) { return copy.eta_q(x); });
}

RegressionSurface Scenario::eta_p_surface() const {
  Scenario copy = *this;
  return RegressionSurface([copy](const Point& x) { return copy.eta_p(x); });
}

ProblemParams Scenario::analytic_params() const {
  ProblemParams p;
  p.d = d_;
  p.gamma = gamma_;
  p.beta = 1.0;
  if (kind_ == ScenarioKind::LogisticRotation) {
    // Lemma-style constants with m = 1, L = ||beta_q||, U = ||beta_p||.
    const double norm_q = norm2(coeffs_.beta_q);
    const double sqrt_two_pi = 2.5066282746310005024;
    p.alpha = 1.0;
    p.c_alpha = std::max(16.0 / (sqrt_two_pi * norm_q), 4.0);
    p.c_gamma = 1.0 / kPi;
  } else {
    // sin margin: Q(0 < |eta^Q - 1/2| <= t) <= t / amp_q, so alpha = 1.
    // c_gamma is the ambiguity indicator constant, half the band constant.
    p.alpha = 1.0;
    p.c_alpha = 1.0 / amp_q_;
    p.c_gamma = band_constant() / 2.0;
  }
  return p;
}

const CoefficientPair& Scenario::coeffs() const {
  if (kind_ != ScenarioKind::LogisticRotation)
    throw std::logic_error("Scenario::coeffs: not a logistic scenario");
  return coeffs_;
}

Point Scenario::sample_covariate(Rng& rng) const {
  Point x(static_cast<std::size_t>(d_));
  if (kind_ == ScenarioKind::LogisticRotation) {
    for (auto& v : x) v = rng.normal();
  } else {
    for (auto& v : x) v = rng.uniform01();
  }
  return x;
}

LabeledSample Scenario::sample(SampleOrigin which, std::size_t n,
                               std::uint64_t seed) const {
  if (n == 0) throw std::invalid_argument("Scenario::sample: n must be positive");
  Rng rng(seed);
  std::vector<Point> points;
  std::vector<int> labels;
  points.reserve(n);
  labels.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    Point x = sample_covariate(rng);
    const double eta = which == SampleOrigin::Target ? eta_q(x) : eta_p(x);
    labels.push_back(rng.bernoulli(eta));
    points.push_back(std::move(x));
  }
  return LabeledSample(std::move(points), std::move(labels), which);
}

}  // namespace tabkit
