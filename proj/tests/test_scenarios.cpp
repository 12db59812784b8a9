#include <doctest.h>

#include <cmath>

#include "tabkit/rng.hpp"
#include "tabkit/scenarios.hpp"

using namespace tabkit;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE_BEGIN("scenarios");

TEST_CASE("target surface values") {
  CHECK(eta_q_nonparam({0.0, 0.0}, 0.1) == doctest::Approx(0.5));
  CHECK(eta_q_nonparam({0.125, 0.125}, 0.1) == doctest::Approx(0.6));
  CHECK(eta_q_nonparam({0.375, 0.375}, 0.1) == doctest::Approx(0.4));
}

TEST_CASE("band source surface values") {
  const Point x{0.125, 0.125};  // eta_q = 0.6
  CHECK(eta_p_bandlike(x, 1.0, 0.0, 0.1) == doctest::Approx(0.7));
  CHECK(eta_p_bandlike(x, 1.0, 0.3, 0.1) == doctest::Approx(0.4));
  // raw value 0.5 + 2 sqrt(0.1) = 1.1325 clips to 1
  CHECK(eta_p_bandlike(x, 0.5, 0.0, 0.1) == doctest::Approx(1.0));
}

TEST_CASE("flipped source surface values") {
  // t = 0.05: sigma = +1, u = 0.1 in the flipped first fraction
  const double v = eta_p_flipped({0.025, 0.025}, 1.0, 0.4, 0.2);
  CHECK(v == doctest::Approx(0.5 - 0.2 * std::sin(kPi / 4.0)));
  CHECK(v == doctest::Approx(0.358578).epsilon(1e-5));

  // seams sit at eta = 1/2
  CHECK(eta_p_flipped({0.25, 0.25}, 1.0, 0.4, 0.2) == doctest::Approx(0.5));
  CHECK(eta_p_flipped({0.35, 0.35}, 1.0, 0.4, 0.2) ==
        doctest::Approx(0.5).epsilon(1e-9));  // u = r seam
}

TEST_CASE("flipped surface is continuous across the seams") {
  const double eps = 1e-9;
  for (double gamma : {0.5, 1.0}) {
    for (double r : {0.2, 0.4}) {
      for (double t_seam : {0.5, 0.5 + r / 2.0, 1.0, 1.0 + r / 2.0}) {
        const Point before{t_seam - eps, 0.0};
        const Point after{t_seam + eps, 0.0};
        const double vb = eta_p_flipped(before, gamma, r, 0.2);
        const double va = eta_p_flipped(after, gamma, r, 0.2);
        CHECK(std::abs(vb - va) < 1e-4);
      }
    }
  }
}

TEST_CASE("r = 0 keeps the positive regimes aligned") {
  const Scenario sc = Scenario::flipped_sine(1.0, 0.0);
  Rng rng(5);
  for (int i = 0; i < 20000; ++i) {
    const Point x{rng.uniform01(), rng.uniform01()};
    const double q = sc.eta_q(x) - 0.5;
    const double p = sc.eta_p(x) - 0.5;
    CHECK(q * p >= -1e-12);
  }
}

TEST_CASE("all surfaces stay within [0,1]") {
  Rng rng(6);
  const Scenario band = Scenario::band_like(0.5, 0.3);
  const Scenario flip = Scenario::flipped_sine(0.5, 0.3);
  const Scenario logistic = Scenario::logistic_rotation(20, 5, 0.7);
  for (int i = 0; i < 100000; ++i) {
    const Point x{rng.uniform01(), rng.uniform01()};
    for (const Scenario* sc : {&band, &flip}) {
      const double q = sc->eta_q(x);
      const double p = sc->eta_p(x);
      CHECK(q >= 0.0);
      CHECK(q <= 1.0);
      CHECK(p >= 0.0);
      CHECK(p <= 1.0);
    }
  }
  Rng nrng(7);
  for (int i = 0; i < 1000; ++i) {
    const Point x = logistic.sample_covariate(nrng);
    CHECK(logistic.eta_q(x) >= 0.0);
    CHECK(logistic.eta_q(x) <= 1.0);
    CHECK(logistic.eta_p(x) >= 0.0);
    CHECK(logistic.eta_p(x) <= 1.0);
  }
}

TEST_CASE("band with no slack keeps the Bayes classifiers identical") {
  const Scenario sc = Scenario::band_like(1.0, 0.0);
  Rng rng(8);
  for (int i = 0; i < 100000; ++i) {
    const Point x{rng.uniform01(), rng.uniform01()};
    const bool q_pos = sc.eta_q(x) >= 0.5;
    const bool p_pos = sc.eta_p(x) >= 0.5;
    CHECK(q_pos == p_pos);
  }
}

TEST_CASE("flip fraction equals the Bayes disagreement measure") {
  for (double r : {0.1, 0.25, 0.4}) {
    const Scenario sc = Scenario::flipped_sine(1.0, r);
    Rng rng(9);
    const int n = 200000;
    int disagreements = 0;
    for (int i = 0; i < n; ++i) {
      const Point x{rng.uniform01(), rng.uniform01()};
      const bool q_pos = sc.eta_q(x) >= 0.5;
      const bool p_pos = sc.eta_p(x) >= 0.5;
      if (q_pos != p_pos) ++disagreements;
    }
    const double fraction = static_cast<double>(disagreements) / n;
    const double se = std::sqrt(r * (1 - r) / n);
    CHECK(std::abs(fraction - r) <= 3.0 * se + 1e-3);
  }
}

TEST_CASE("logistic coefficient construction") {
  const CoefficientPair aligned = make_logistic_coeffs(20, 10, 0.0);
  for (int j = 0; j < 20; ++j)
    CHECK(aligned.beta_p[j] == doctest::Approx(3.0 * aligned.beta_q[j]));

  const CoefficientPair rotated = make_logistic_coeffs(20, 10, kPi / 4.0);
  CHECK(rotated.beta_p[15] == doctest::Approx(0.5));
  CHECK(angle_between(rotated.beta_q, rotated.beta_p) ==
        doctest::Approx(std::atan(1.0 / 3.0)));

  for (double delta : {0.0, 0.3, 0.8, 1.2}) {
    const CoefficientPair pair = make_logistic_coeffs(50, 10, delta);
    double norm_q = 0.0;
    for (double v : pair.beta_q) norm_q += v * v;
    CHECK(std::sqrt(norm_q) == doctest::Approx(0.5 * std::sqrt(10.0)));
  }

  CHECK_THROWS_AS((void)make_logistic_coeffs(10, 10, 0.1), std::invalid_argument);
  CHECK_THROWS_AS((void)make_logistic_coeffs(20, 10, kPi / 2.0), std::invalid_argument);
}

TEST_CASE("realized angle grows with the rotation parameter") {
  double previous = -1.0;
  for (double delta : {0.0, 0.2, 0.5, 0.9, 1.3, 1.5}) {
    const CoefficientPair pair = make_logistic_coeffs(40, 8, delta);
    const double angle =
        delta == 0.0 ? 0.0 : angle_between(pair.beta_q, pair.beta_p);
    CHECK(angle > previous - 1e-15);
    if (delta == 0.0) CHECK(angle == 0.0);
    previous = angle;
  }
}

TEST_CASE("exact-angle construction realizes the angle over the full range") {
  for (double delta : {0.0, 0.3, 1.0, kPi / 2.0, 1.75, 2.5}) {
    const CoefficientPair pair = make_logistic_coeffs(60, 10, delta, true);
    const double angle = angle_between(pair.beta_q, pair.beta_p);
    // acos noise near cos = 1 is ~1e-8
    CHECK(std::abs(angle - delta) < 1e-7);
    double norm_p = 0.0;
    for (double v : pair.beta_p) norm_p += v * v;
    CHECK(std::sqrt(norm_p) == doctest::Approx(3.0 * 0.5 * std::sqrt(10.0)));
  }
}

TEST_CASE("angle between vectors") {
  CHECK(angle_between({1, 0}, {1, 0}) == doctest::Approx(0.0));
  CHECK(angle_between({1, 0}, {0, 1}) == doctest::Approx(kPi / 2.0));
  CHECK(angle_between({1, 0}, {1, 1}) == doctest::Approx(kPi / 4.0));
  CHECK_THROWS_AS((void)angle_between({0, 0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("sampling is deterministic and honors the label law") {
  const Scenario sc = Scenario::band_like(1.0, 0.1);
  const LabeledSample a = sc.sample(SampleOrigin::Target, 500, 42);
  const LabeledSample b = sc.sample(SampleOrigin::Target, 500, 42);
  CHECK(a.points == b.points);
  CHECK(a.labels == b.labels);
  CHECK(a.origin == SampleOrigin::Target);

  const LabeledSample c = sc.sample(SampleOrigin::Source, 500, 42);
  CHECK(a.points == c.points);  // same covariate law and seed
  CHECK(a.labels != c.labels);  // different regression surface

  // mean target label is 1/2 by the sign symmetry of the sine
  const LabeledSample big = sc.sample(SampleOrigin::Target, 200000, 3);
  double mean = 0.0;
  for (int y : big.labels) mean += y;
  mean /= static_cast<double>(big.size());
  CHECK(std::abs(mean - 0.5) <= 3.0 * std::sqrt(0.25 / 200000.0));

  CHECK_THROWS_AS((void)sc.sample(SampleOrigin::Target, 0, 1), std::invalid_argument);
}

TEST_SUITE_END();
