#include "tabkit/model.hpp"

#include <cmath>
#include <stdexcept>

namespace tabkit {

namespace {

double sgn(double v) { return v > 0 ? 1.0 : (v < 0 ? -1.0 : 0.0); }

/// Mean and standard error of f(X) over n covariate draws from the scenario's
/// marginal law. One streaming pass; Welford would be overkill at these sizes.
template <typename F>
McEstimate mc_mean(const Scenario& scenario, std::size_t n, std::uint64_t seed,
                   F&& integrand) {
  if (n == 0) throw std::invalid_argument("mc_mean: n must be positive");
  Rng rng(seed);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point x = scenario.sample_covariate(rng);
    const double v = integrand(x);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / static_cast<double>(n);
  double var = sum_sq / static_cast<double>(n) - mean * mean;
  if (var < 0) var = 0;
  McEstimate est;
  est.value = mean;
  est.std_error = n > 1 ? std::sqrt(var / static_cast<double>(n)) : 0.0;
  est.n = n;
  return est;
}

}  // namespace

double signal_strength(double eta_q_val, double eta_p_val) {
  if (eta_q_val < 0 || eta_q_val > 1 || eta_p_val < 0 || eta_p_val > 1)
    throw std::invalid_argument("signal_strength: inputs must lie in [0,1]");
  const double product = sgn(eta_q_val - 0.5) * (eta_p_val - 0.5);
  return product >= 0 ? std::abs(eta_p_val - 0.5) : 0.0;
}

DecisionRule bayes_rule(const Scenario& scenario) {
  return DecisionRule(
      [scenario](const Point& x) { return scenario.eta_q(x) >= 0.5 ? 1 : 0; });
}

DecisionRule bayes_rule_source(const Scenario& scenario) {
  return DecisionRule(
      [scenario](const Point& x) { return scenario.eta_p(x) >= 0.5 ? 1 : 0; });
}

McEstimate excess_risk_mc(const DecisionRule& rule, const Scenario& scenario,
                          std::size_t n, std::uint64_t seed) {
  return mc_mean(scenario, n, seed, [&](const Point& x) {
    const double eta = scenario.eta_q(x);
    const int bayes = eta >= 0.5 ? 1 : 0;
    return rule(x) != bayes ? 2.0 * std::abs(eta - 0.5) : 0.0;
  });
}

McEstimate ambiguity_level_mc(const Scenario& scenario, double z, double gamma,
                              double c_gamma, std::size_t n, std::uint64_t seed) {
  if (z < 0 || z > 0.5)
    throw std::invalid_argument("ambiguity_level_mc: z must lie in [0, 1/2]");
  return mc_mean(scenario, n, seed, [&](const Point& x) {
    const double dq = std::abs(scenario.eta_q(x) - 0.5);
    if (dq > z) return 0.0;
    const double s = signal_strength(scenario.eta_q(x), scenario.eta_p(x));
    return s <= c_gamma * std::pow(dq, gamma) ? dq : 0.0;
  });
}

double ambiguity_bound_bandlike(double z, double delta, const ProblemParams& params) {
  params.validate();
  const double a = params.alpha;
  const double margin_branch = params.c_alpha * std::pow(z, 1.0 + a);
  const double band_branch =
      std::pow(2.0, (1.0 + a) / params.gamma) * params.c_alpha *
      std::pow(params.c_gamma, -(1.0 + a) / params.gamma) *
      std::pow(delta, (1.0 + a) / params.gamma);
  return std::min(margin_branch, band_branch);
}

double ambiguity_bound_logistic(double z, double delta, double m, double l_norm,
                                double u_norm) {
  if (m <= 0 || m > 1)
    throw std::invalid_argument("ambiguity_bound_logistic: m must lie in (0,1]");
  if (l_norm <= 0 || u_norm <= 0)
    throw std::invalid_argument("ambiguity_bound_logistic: norms must be positive");
  const double sqrt_two_pi = 2.5066282746310005024;
  const double c_alpha = std::max(16.0 * m / (sqrt_two_pi * l_norm), 4.0);
  return std::min(c_alpha * z * z, std::sqrt(2.0) * u_norm / m * delta * delta);
}

McEstimate signal_transfer_risk_mc(const DecisionRule& source_rule,
                                   const Scenario& scenario, double gamma,
                                   double c_gamma, std::size_t n,
                                   std::uint64_t seed) {
  return mc_mean(scenario, n, seed, [&](const Point& x) {
    const double eta = scenario.eta_q(x);
    const int bayes = eta >= 0.5 ? 1 : 0;
    if (source_rule(x) == bayes) return 0.0;
    const double dq = std::abs(eta - 0.5);
    const double s = signal_strength(eta, scenario.eta_p(x));
    return s >= c_gamma * std::pow(dq, gamma) ? dq : 0.0;
  });
}

McEstimate source_excess_risk_mc(const DecisionRule& source_rule,
                                 const Scenario& scenario, std::size_t n,
                                 std::uint64_t seed) {
  // Q_X = P_X in every scenario family here, so the covariate sampler is the
  // same; the integrand switches to the source surface and Bayes rule.
  return mc_mean(scenario, n, seed, [&](const Point& x) {
    const double eta = scenario.eta_p(x);
    const int bayes = eta >= 0.5 ? 1 : 0;
    return source_rule(x) != bayes ? std::abs(eta - 0.5) : 0.0;
  });
}

}  // namespace tabkit
