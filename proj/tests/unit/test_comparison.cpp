#include <doctest.h>

#include <cmath>

#include "ucilab/comparison.hpp"
#include "ucilab/numerics.hpp"

using namespace ucilab;

TEST_CASE("comparison_v solves the 2x2 system: (0, 1, 2)") {
  const auto c = comparison_v(0.0, 1.0, 2.0);
  CHECK(c.kappa == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.lambda == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(c.A == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(c.B == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(c.xi == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-10));
  CHECK(std::abs(c.v(c.xi)) <= 1e-12);
  // boundary conditions
  CHECK(c.v(0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(c.dv(0.0) == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("comparison_v direct-substitution oracle: (2, 1, 3)") {
  const auto c = comparison_v(2.0, 1.0, 3.0);
  const double s2 = std::sqrt(2.0);
  CHECK(c.kappa == doctest::Approx(1.0 + s2).epsilon(1e-14));
  CHECK(c.lambda == doctest::Approx(s2 - 1.0).epsilon(1e-13));
  CHECK(c.B == doctest::Approx((s2 - 2.0) / (2.0 * s2)).epsilon(1e-13));
  CHECK(c.A == doctest::Approx(1.0 - (s2 - 2.0) / (2.0 * s2)).epsilon(1e-13));
  CHECK(std::abs(c.v(c.xi)) <= 1e-12);
  CHECK(c.B < 0.0);
  CHECK(c.A > 1.0);
}

TEST_CASE("comparison_v limit kappa' -> kappa: B -> 0-, A -> 1+") {
  double prev_B = -1.0;
  for (double kp : {1.5, 1.1, 1.01, 1.001}) {
    const auto c = comparison_v(0.0, 1.0, kp);
    CHECK(c.B < 0.0);
    CHECK(c.B > prev_B);
    CHECK(c.A > 1.0);
    prev_B = c.B;
  }
  CHECK(comparison_v(0.0, 1.0, 1.0 + 1e-9).B == doctest::Approx(0.0).epsilon(1e-8));
  CHECK_THROWS_AS(comparison_v(0.0, 1.0, 1.0), KappaPrimeNotGreater);
  CHECK_THROWS_AS(comparison_v(0.0, 1.0, 0.5), KappaPrimeNotGreater);
}

TEST_CASE("cauchy_w critical case (2, 1)") {
  const auto w = cauchy_w(2.0, 1.0);
  CHECK(w.discriminant == DiscriminantCase::Critical);
  CHECK(w.x_hat == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.w(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
  CHECK(w.kappa == doctest::Approx(1.0 + std::sqrt(2.0)).epsilon(1e-14));
  // margin = e^{sqrt 2} - 1/(1 + sqrt 2)
  const double expected = std::exp(std::sqrt(2.0)) - 1.0 / (1.0 + std::sqrt(2.0));
  CHECK(w.margin == doctest::Approx(expected).epsilon(1e-12));
  CHECK(w.margin > 0.0);
}

TEST_CASE("cauchy_w oscillatory case (0, 1)") {
  const auto w = cauchy_w(0.0, 1.0);
  CHECK(w.discriminant == DiscriminantCase::Oscillatory);
  CHECK(w.omega == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.x_hat == doctest::Approx(1.5707963267948966).epsilon(1e-14));
  CHECK(w.w(w.x_hat) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.margin == doctest::Approx(std::exp(1.5707963267948966) - 1.0).epsilon(1e-12));
}

TEST_CASE("cauchy_w drift-only case (2, 0) increases forever") {
  const auto w = cauchy_w(2.0, 0.0);
  CHECK(w.increasing_forever);
  CHECK(std::isinf(w.x_hat));
  CHECK(w.margin == doctest::Approx(0.5).epsilon(1e-15));  // asymptote 1/beta
  CHECK(w.w(10.0) == doctest::Approx(0.5 * (1.0 - std::exp(-20.0))).epsilon(1e-14));
  CHECK_THROWS_AS(cauchy_w(0.0, 0.0), KappaZero);
}

TEST_CASE("cauchy_w margin is positive across a log grid of (beta, gamma)") {
  for (int i = 0; i <= 12; ++i)
    for (int j = 0; j <= 12; ++j) {
      const double beta = std::pow(10.0, -3.0 + 0.5 * i);
      const double gamma = std::pow(10.0, -3.0 + 0.5 * j);
      const auto w = cauchy_w(beta, gamma);
      CHECK(w.margin > 0.0);
      if (!w.increasing_forever) {
        CHECK(w.x_hat > 0.0);
        CHECK(std::isfinite(w.margin));
        // w is indeed at a peak or sine crest: w positive around x_hat
        CHECK(w.w(w.x_hat) > 0.0);
      }
    }
}

TEST_CASE("cauchy_w solves its own equation (finite differences)") {
  for (auto [beta, gamma] : {std::pair{2.0, 1.0}, std::pair{0.3, 2.0}, std::pair{4.0, 0.5}}) {
    const auto w = cauchy_w(beta, gamma);
    const double x_top = w.increasing_forever ? 2.0 : w.x_hat;
    for (double frac : {0.2, 0.5, 0.8}) {
      const double x = frac * x_top;
      const double h = 1e-5;
      const double ddw = (w.w(x + h) - 2.0 * w.w(x) + w.w(x - h)) / (h * h);
      // on (0, x_hat): w > 0, w' > 0, so L* w = w'' + beta w' + gamma w
      const double res = ddw + beta * w.dw(x) + gamma * w.w(x);
      CHECK(std::abs(res) <= 1e-5 * (std::abs(ddw) + beta * std::abs(w.dw(x)) + 1.0));
    }
  }
}
