#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tabkit/rng.hpp"
#include "tabkit/types.hpp"

namespace tabkit {

/// Coefficient vectors of a (target, source) logistic pair.
struct CoefficientPair {
  std::vector<double> beta_q;
  std::vector<double> beta_p;
};

/// Angle between two nonzero vectors, in [0, pi]. The cosine is clipped into
/// [-1,1] before arccos to guard rounding.
double angle_between(const std::vector<double>& u, const std::vector<double>& v);

/// Target regression surface of the nonparametric designs:
/// 1/2 + amp_q * sin(2*pi*(x1+x2)).
double eta_q_nonparam(const Point& x, double amp_q);

/// Source surface concentrating around an informative curve: for t = eta^Q(x),
/// 1/2 + 2(t-1/2)^gamma - delta above 1/2 and mirrored below, clipped to [0,1].
double eta_p_bandlike(const Point& x, double gamma, double delta, double amp_q);

/// Source surface whose positive regime is flipped on the first r fraction of
/// each half-period of eta^Q. With t = x1+x2, sign sigma = sgn(sin(2*pi*t)) and
/// u = frac(2t):
///   u in [0,r):  1/2 - sigma * amp_p * sin(pi*u/r)^gamma
///   u in [r,1):  1/2 + sigma * amp_p * sin(pi*(u-r)/(1-r))^gamma
/// Continuous, equal to 1/2 at the seams u in {0, r}.
double eta_p_flipped(const Point& x, double gamma, double r, double amp_p);

/// Sparse target coefficients with a rotated, scaled source:
///   beta_q = (0.5 * 1_s, 0_{d-s})
///   beta_p = (1.5 * 1_s, (||beta_q|| / sqrt(d-s)) * tan(delta) * 1_{d-s})
/// The realized angle between the two is arctan(tan(delta)/3); with
/// exact_angle the tail is scaled by 3 so the angle equals delta itself.
CoefficientPair make_logistic_coeffs(int d, int s, double delta,
                                     bool exact_angle = false);

enum class ScenarioKind { BandLike, FlippedSine, LogisticRotation };

/// Fully analytic description of a (Q,P) distribution pair: regression
/// surfaces plus the shared covariate law. Immutable; samplers take explicit
/// seeds and are pure given the seed.
class Scenario {
 public:
  static Scenario band_like(double gamma, double delta, double amp_q = 0.1);
  static Scenario flipped_sine(double gamma, double r, double amp_q = 0.1,
                               double amp_p = 0.2);
  static Scenario logistic_rotation(int d, int s, double delta,
                                    bool exact_angle = false);

  ScenarioKind kind() const { return kind_; }
  int dim() const { return d_; }
  double gamma() const { return gamma_; }
  double amp_q() const { return amp_q_; }

  /// Scenario family name as used in result records: band / flip / logistic.
  std::string name() const;
  /// Name and value of the family's ambiguity knob (delta or r).
  std::string kind_param_name() const;
  double kind_param_value() const;

  double eta_q(const Point& x) const;
  double eta_p(const Point& x) const;
  RegressionSurface eta_q_surface() const;
  RegressionSurface eta_p_surface() const;

  /// Margin/transfer constants under which the ambiguity-level assumption
  /// holds for this scenario. c_gamma is the indicator constant (half the
  /// band constant for the band designs; m/pi for the logistic pair).
  ProblemParams analytic_params() const;

  /// Constant C in the band inequality s(x) >= C |eta^Q - 1/2|^gamma - delta;
  /// equals 2 for the band design. Only meaningful for BandLike.
  double band_constant() const { return 2.0; }

  /// Logistic designs only.
  const CoefficientPair& coeffs() const;
  int sparsity() const { return s_; }

  /// One covariate draw from the shared marginal law (uniform on the unit
  /// square for the nonparametric designs, standard normal otherwise).
  Point sample_covariate(Rng& rng) const;

  /// n labeled draws from Q or P; labels are Bernoulli(eta(x)).
  LabeledSample sample(SampleOrigin which, std::size_t n,
                       std::uint64_t seed) const;

 private:
  Scenario() = default;

  ScenarioKind kind_ = ScenarioKind::BandLike;
  int d_ = 2;
  double gamma_ = 1.0;
  double delta_ = 0.0;   // band / logistic ambiguity knob
  double ratio_ = 0.0;   // flip fraction r
  double amp_q_ = 0.1;
  double amp_p_ = 0.2;
  int s_ = 0;
  CoefficientPair coeffs_;
};

}  // namespace tabkit
