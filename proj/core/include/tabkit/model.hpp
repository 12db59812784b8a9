#pragma once

#include <cstdint>

#include "tabkit/scenarios.hpp"
#include "tabkit/types.hpp"

namespace tabkit {

/// Usable source signal at a point: |eta_p - 1/2| when eta_p sits on the same
/// side of 1/2 as eta_q (sgn(0) = 0, so eta_q = 1/2 takes the first branch),
/// zero otherwise. Inputs must lie in [0,1].
double signal_strength(double eta_q_val, double eta_p_val);

/// Rule x -> 1{eta^Q(x) >= 1/2}. Ties at 1/2 classify as 1.
DecisionRule bayes_rule(const Scenario& scenario);

/// Rule x -> 1{eta^P(x) >= 1/2}.
DecisionRule bayes_rule_source(const Scenario& scenario);

/// Monte-Carlo excess risk 2 E_Q[|eta^Q - 1/2| 1{rule != f*_Q}] over
/// X ~ Q_X, with standard error. Deterministic for fixed (seed, n).
McEstimate excess_risk_mc(const DecisionRule& rule, const Scenario& scenario,
                          std::size_t n, std::uint64_t seed);

/// Monte-Carlo ambiguity level at z:
/// E_Q[|eta^Q - 1/2| 1{s(X) <= c_gamma |eta^Q - 1/2|^gamma, |eta^Q - 1/2| <= z}].
/// Requires z in [0, 1/2].
McEstimate ambiguity_level_mc(const Scenario& scenario, double z, double gamma,
                              double c_gamma, std::size_t n, std::uint64_t seed);

/// Closed-form ambiguity bound for a source within a band of width delta of
/// an informative curve: min(c_alpha z^{1+alpha},
/// 2^{(1+alpha)/gamma} c_alpha c_gamma^{-(1+alpha)/gamma} delta^{(1+alpha)/gamma}).
/// params.c_gamma is the band constant; the matching Monte-Carlo indicator
/// uses params.c_gamma / 2.
double ambiguity_bound_bandlike(double z, double delta, const ProblemParams& params);

/// Closed-form ambiguity bound for a pair of logistic models with norms
/// l_norm <= m ||beta_q|| <= ||beta_p|| <= u_norm and angle at most delta:
/// min((16 m / (sqrt(2 pi) l_norm) v 4) z^2, sqrt(2) u_norm / m * delta^2).
/// The matching indicator constant is m / pi.
double ambiguity_bound_logistic(double z, double delta, double m, double l_norm,
                                double u_norm);

/// Monte-Carlo signal transfer risk of a source-fitted rule:
/// E_Q[|eta^Q - 1/2| 1{rule != f*_Q, s(X) >= c_gamma |eta^Q - 1/2|^gamma}].
McEstimate signal_transfer_risk_mc(const DecisionRule& source_rule,
                                   const Scenario& scenario, double gamma,
                                   double c_gamma, std::size_t n,
                                   std::uint64_t seed);

/// Monte-Carlo source excess risk E_P[|eta^P - 1/2| 1{rule != f*_P}] over
/// X ~ P_X (no factor 2).
McEstimate source_excess_risk_mc(const DecisionRule& source_rule,
                                 const Scenario& scenario, std::size_t n,
                                 std::uint64_t seed);

}  // namespace tabkit
