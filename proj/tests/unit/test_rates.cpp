#include <doctest.h>

#include <cmath>
#include <random>

#include "ucilab/numerics.hpp"
#include "ucilab/rates.hpp"

using namespace ucilab;

TEST_CASE("sharp_rate closed forms") {
  SUBCASE("pure potential") {
    const auto r = sharp_rate(0.0, 1.0);
    CHECK(r.kappa == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.lambda == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.omega == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.discriminant == DiscriminantCase::Oscillatory);
  }
  SUBCASE("pure drift") {
    const auto r = sharp_rate(2.0, 0.0);
    CHECK(r.kappa == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.lambda == 0.0);
    CHECK(r.omega == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(r.discriminant == DiscriminantCase::Overdamped);
  }
  SUBCASE("mixed, direct evaluation") {
    // sqrt(1/4 + 2) = 3/2, so kappa = 2 and lambda = 1
    const auto r = sharp_rate(1.0, 2.0);
    CHECK(r.kappa == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(r.lambda == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("critical tie") {
    const auto r = sharp_rate(2.0, 1.0);
    CHECK(r.discriminant == DiscriminantCase::Critical);
    CHECK(r.omega == 0.0);
  }
  CHECK_THROWS_AS(sharp_rate(-1.0, 0.0), NegativeInput);
}

TEST_CASE("sharp_rate algebraic identities on random inputs") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 2000; ++i) {
    const double beta = std::exp(uniform(rng, -7.0, 7.0));
    const double gamma = std::exp(uniform(rng, -7.0, 7.0));
    const auto r = sharp_rate(beta, gamma);
    CHECK(r.kappa >= r.lambda);
    CHECK(r.kappa * r.lambda == doctest::Approx(gamma).epsilon(1e-13));
    CHECK(r.kappa - r.lambda == doctest::Approx(beta).epsilon(1e-13));
    // monotonicity in both arguments
    CHECK(sharp_rate(beta * 1.1, gamma).kappa >= r.kappa);
    CHECK(sharp_rate(beta, gamma * 1.1).kappa >= r.kappa);
  }
}

TEST_CASE("q_poly vanishes at the sharp rate") {
  CHECK(q_poly(1.0, 0.0, 1.0, 1.0) == 0.0);
  CHECK(q_poly(1.0, 2.0, 0.0, 2.0) == 0.0);
  const double kappa = sharp_rate(1.5, 2.0).kappa;
  CHECK(std::abs(q_poly(2.0, 3.0, 4.0, kappa)) <= 1e-12);

  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const double a = std::exp(uniform(rng, -2.0, 2.0));
    const double q = std::exp(uniform(rng, -3.0, 3.0));
    const double v = std::exp(uniform(rng, -3.0, 3.0));
    const double k = sharp_rate(q / a, v / a).kappa;
    const double scale = a * k * k + q * k + v;
    CHECK(std::abs(q_poly(a, q, v, k)) <= 1e-10 * scale);
  }
}

TEST_CASE("q_poly perturbation bound Q(kappa~ + eps) >= alpha eps^2") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const double a = std::exp(uniform(rng, -2.0, 2.0));
    const double q = std::exp(uniform(rng, -3.0, 3.0));
    const double v = std::exp(uniform(rng, -3.0, 3.0));
    const double eps = std::exp(uniform(rng, -4.0, 1.0));
    // any kappa~ at or above the largest root has Q(kappa~) >= 0
    const double root = sharp_rate(q / a, v / a).kappa;
    const double kt = root * uniform(rng, 1.0, 2.0);
    REQUIRE(q_poly(a, q, v, kt) >= -1e-10 * (a * kt * kt + q * kt + v));
    CHECK(q_poly(a, q, v, kt + eps) >= a * eps * eps * (1.0 - 1e-12) - 1e-300);
  }
}

TEST_CASE("threshold_tail: constant field with drift") {
  const auto f = constant_field(1.0, 1.0, -1.0);
  const auto t = threshold_tail(f, 8.0);
  CHECK(t.kappa_limsup == doctest::Approx(0.5 + std::sqrt(1.25)).epsilon(1e-12));
  CHECK(t.kappa_abg == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.kappa_abg > t.kappa_limsup);  // strict gap since q != 0
}

TEST_CASE("threshold_tail: thresholds coincide when q == 0") {
  const auto f = constant_field(2.0, 0.0, -3.0);
  const auto t = threshold_tail(f, 5.0);
  CHECK(t.kappa_limsup == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
  CHECK(t.kappa_abg == doctest::Approx(std::sqrt(1.5)).epsilon(1e-12));
}

TEST_CASE("threshold_tail: disjoint supports separate the two thresholds") {
  // q lives on [0,5), V on [5,10]: the pointwise combination never sees both.
  ParamMap pw{{"alpha.0", 1.0}, {"alpha.1", 1.0}, {"q.0", 1.0}, {"q.1", 0.0},
              {"v.0", 0.0},    {"v.1", -1.0},   {"breaks.0", 5.0}};
  const auto f = make_profile("piecewise_constant", pw);
  const auto t = threshold_tail(f, 0.0);
  // pointwise: max(1/2 + sqrt(1/4), sqrt(1)) = 1; combination of sups: 1 + 1 = 2
  CHECK(t.kappa_limsup == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.kappa_abg == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(t.kappa_abg > t.kappa_limsup + 1e-3);
}

TEST_CASE("threshold_tail rejects an empty tail") {
  const auto f = constant_field(1.0, 0.0, -1.0);
  CHECK_THROWS_AS(threshold_tail(f, 10.0), EmptyTail);
  CHECK_THROWS_AS(threshold_tail(f, 11.0), EmptyTail);
}
