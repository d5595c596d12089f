#include <doctest.h>

#include <cmath>

#include "ucilab/spectral.hpp"
#include "ucilab/trajectory.hpp"

using namespace ucilab;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("dirichlet_lambda1 reproduces pi^2 on the unit interval") {
  const auto f = constant_field(1.0, 0.0, 0.0, {0.0, 2.0});
  const auto e = dirichlet_lambda1(f, {0.0, 1.0}, 2048);
  CHECK(std::abs(e.lambda - kPi * kPi) <= 1e-3);
  CHECK(e.residual <= 1e-8);
  for (std::size_t i = 1; i + 1 < e.phi.size(); ++i) CHECK(e.phi[i] > 0.0);
  CHECK(e.phi.front() == 0.0);
  CHECK(e.phi.back() == 0.0);
}

TEST_CASE("dirichlet_lambda1 constant potential shift") {
  const auto f = constant_field(1.0, 0.0, -1.0, {0.0, 8.0});
  const double L = 5.0;
  const auto e = dirichlet_lambda1(f, {0.0, L}, 2048);
  CHECK(std::abs(e.lambda - (kPi * kPi / (L * L) + 1.0)) <= 1e-3);
}

TEST_CASE("dirichlet_lambda1 drift shift via the Liouville transform") {
  // -(u'' + q u') = lambda u on (0,1) maps to -w'' + (q^2/4) w = lambda w
  const auto f = constant_field(1.0, 2.0, 0.0, {0.0, 2.0});
  const auto e = dirichlet_lambda1(f, {0.0, 1.0}, 2048);
  CHECK(std::abs(e.lambda - (kPi * kPi + 1.0)) <= 1e-3);
}

TEST_CASE("dirichlet_lambda1 mesh convergence is second order") {
  const auto f = constant_field(1.0, 0.0, 0.0, {0.0, 2.0});
  const double l1 = dirichlet_lambda1(f, {0.0, 1.0}, 128).lambda;
  const double l2 = dirichlet_lambda1(f, {0.0, 1.0}, 256).lambda;
  const double l3 = dirichlet_lambda1(f, {0.0, 1.0}, 512).lambda;
  const double rate = (l1 - l2) / (l2 - l3);
  CHECK(rate == doctest::Approx(4.0).epsilon(0.15));
}

TEST_CASE("dirichlet_lambda1 refines the mesh when the Peclet number is high") {
  const auto f = constant_field(1.0, 50.0, 0.0, {0.0, 2.0});
  const auto e = dirichlet_lambda1(f, {0.0, 1.0}, 16);
  CHECK(e.mesh_n > 16);  // 16 cells would put |q| h / (2 alpha) well above 1
  for (std::size_t i = 1; i + 1 < e.phi.size(); ++i) CHECK(e.phi[i] > 0.0);
}

TEST_CASE("generalized_lambda1: V = -1 converges to 1 and lambdas decrease") {
  const auto f = constant_field(1.0, 0.0, -1.0, {0.0, 40.0});
  const auto est = generalized_lambda1(f, {5.0, 10.0, 20.0, 40.0}, 64.0);
  for (std::size_t i = 1; i < est.lambdas.size(); ++i)
    CHECK(est.lambdas[i] <= est.lambdas[i - 1] + 1e-12);
  CHECK(std::abs(est.lambda_inf - 1.0) <= 1e-2);
  CHECK(est.lambda_nonneg);
}

TEST_CASE("generalized_lambda1: V = 0 tends to zero, V = +1 flags negativity") {
  const auto f0 = constant_field(1.0, 0.0, 0.0, {0.0, 40.0});
  const auto e0 = generalized_lambda1(f0, {5.0, 10.0, 20.0, 40.0}, 64.0);
  CHECK(std::abs(e0.lambda_inf) <= 1e-2);

  const auto fp = constant_field(1.0, 0.0, 1.0, {0.0, 40.0});
  const auto ep = generalized_lambda1(fp, {5.0, 10.0, 20.0, 40.0}, 64.0);
  CHECK(std::abs(ep.lambda_inf + 1.0) <= 1e-2);
  CHECK(!ep.lambda_nonneg);
}

TEST_CASE("supersolution_check accepts the principal eigenfunction") {
  const auto f = constant_field(1.0, 0.0, -1.0, {0.0, 8.0});
  const auto e = dirichlet_lambda1(f, {0.0, 5.0}, 1024);
  REQUIRE(e.lambda > 0.0);
  // interior nodes only: the eigenfunction vanishes at the Dirichlet ends
  std::vector<double> x(e.x.begin() + 1, e.x.end() - 1);
  std::vector<double> u(e.phi.begin() + 1, e.phi.end() - 1);
  std::vector<double> du(x.size(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    const std::size_t j = i + 1;  // index into the full mesh
    du[i] = (e.phi[j + 1] - e.phi[j - 1]) / (e.x[j + 1] - e.x[j - 1]);
  }
  const Trajectory traj(x, u, du, TrajectoryMeta{"samples", 0.0, "phi", 1e-3});
  CHECK(supersolution_check(f, traj, e.lambda));
}

TEST_CASE("supersolution_check on closed forms") {
  const int n = 1 << 16;
  const auto fm = constant_field(1.0, 0.0, -1.0);
  const auto decaying = Trajectory::from_function([](double x) { return std::exp(-x); },
                                                  [](double x) { return -std::exp(-x); },
                                                  {0.0, 10.0}, n);
  CHECK(supersolution_check(fm, decaying, 0.0));

  // u = e^{-x/2} under V = +1: L u = (1/4 + 1) u > 0, not a supersolution
  const auto fp = constant_field(1.0, 0.0, 1.0);
  const auto slow = Trajectory::from_function([](double x) { return std::exp(-0.5 * x); },
                                              [](double x) { return -0.5 * std::exp(-0.5 * x); },
                                              {0.0, 10.0}, n);
  CHECK(!supersolution_check(fp, slow, 0.0));

  CHECK_THROWS_AS(supersolution_check(fm, decaying, -1.0), Error);
  const auto signchanging = Trajectory::from_function([](double x) { return std::cos(x); },
                                                      [](double x) { return -std::sin(x); },
                                                      {0.0, 10.0}, 512);
  CHECK_THROWS_AS(supersolution_check(fm, signchanging, 0.0), NotPositive);
}
