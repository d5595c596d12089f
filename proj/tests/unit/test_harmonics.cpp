#include <doctest.h>

#include <cmath>
#include <random>

#include "ucilab/harmonics.hpp"

using namespace ucilab;

namespace {
constexpr double kPi = 3.14159265358979323846;

double gram_error(const AngularQuadrature& quad, const std::vector<SphericalMode>& basis) {
  double worst = 0.0;
  for (std::size_t a = 0; a < basis.size(); ++a)
    for (std::size_t b = a; b < basis.size(); ++b) {
      double dot = 0.0;
      for (std::size_t k = 0; k < quad.size(); ++k)
        dot += quad.nodes()[k].weight * basis[a].phi[k] * basis[b].phi[k];
      worst = std::max(worst, std::abs(dot - (a == b ? 1.0 : 0.0)));
    }
  return worst;
}
} // namespace

TEST_CASE("harmonic bases are orthonormal under their quadratures") {
  for (int n_dim : {2, 3}) {
    for (int band : {1, 4, 8}) {
      const auto quad = AngularQuadrature::make(n_dim, band);
      const auto basis = harmonic_basis(quad, band);
      CHECK(gram_error(quad, basis) <= 1e-10);
      // eigenvalues are exactly l (l + N - 2)
      for (const auto& m : basis)
        CHECK(m.lambda == static_cast<double>(m.degree) * (m.degree + n_dim - 2));
    }
  }
  // mode counts: 2 band + 1 on the circle, (band+1)^2 on the sphere
  CHECK(harmonic_basis(AngularQuadrature::make(2, 5), 5).size() == 11);
  CHECK(harmonic_basis(AngularQuadrature::make(3, 5), 5).size() == 36);
}

TEST_CASE("decompose: radial input excites only the constant mode") {
  const auto quad = AngularQuadrature::make(3, 3);
  const auto r_grid = linspace(1.0, 5.0, 9);
  std::vector<std::vector<double>> u(r_grid.size(), std::vector<double>(quad.size()));
  auto f = [](double r) { return std::exp(-r); };
  for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
    for (std::size_t k = 0; k < quad.size(); ++k) u[ir][k] = f(r_grid[ir]);

  const auto set = decompose(u, r_grid, quad, 3);
  const double sqrtS = std::sqrt(4.0 * kPi);
  for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
    CHECK(set.u_modes[0][ir] == doctest::Approx(f(r_grid[ir]) * sqrtS).epsilon(1e-12));
  for (std::size_t jm = 1; jm < set.modes.size(); ++jm)
    for (double c : set.u_modes[jm]) CHECK(std::abs(c) <= 1e-12);
  for (double e : set.truncation_energy) CHECK(e <= 1e-12);
}

TEST_CASE("decompose: N = 2 cosine input hits the l = 1 cosine mode") {
  const auto quad = AngularQuadrature::make(2, 4);
  const auto r_grid = linspace(1.0, 3.0, 5);
  auto g = [](double r) { return 1.0 / r; };
  std::vector<std::vector<double>> u(r_grid.size(), std::vector<double>(quad.size()));
  for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
    for (std::size_t k = 0; k < quad.size(); ++k)
      u[ir][k] = g(r_grid[ir]) * std::cos(quad.nodes()[k].theta);

  const auto set = decompose(u, r_grid, quad, 4);
  for (std::size_t jm = 0; jm < set.modes.size(); ++jm) {
    const bool target = set.modes[jm].degree == 1 && set.modes[jm].order == 1;
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir) {
      if (target) {
        CHECK(set.modes[jm].lambda == 1.0);
        CHECK(set.u_modes[jm][ir] ==
              doctest::Approx(g(r_grid[ir]) * std::sqrt(kPi)).epsilon(1e-12));
      } else {
        CHECK(std::abs(set.u_modes[jm][ir]) <= 1e-12);
      }
    }
  }
}

TEST_CASE("decompose: N = 3 degree-2 zonal harmonic has lambda = 6") {
  const auto quad = AngularQuadrature::make(3, 4);
  const auto r_grid = linspace(1.0, 2.0, 3);
  // Y_2^0 direction: P_2(cos theta) = (3 cos^2 - 1)/2 with unit normalization
  const double norm = std::sqrt(5.0 / (4.0 * kPi));
  std::vector<std::vector<double>> u(r_grid.size(), std::vector<double>(quad.size()));
  for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
    for (std::size_t k = 0; k < quad.size(); ++k) {
      const double c = std::cos(quad.nodes()[k].theta);
      u[ir][k] = r_grid[ir] * norm * 0.5 * (3.0 * c * c - 1.0);
    }
  const auto set = decompose(u, r_grid, quad, 4);
  for (std::size_t jm = 0; jm < set.modes.size(); ++jm) {
    const bool target = set.modes[jm].degree == 2 && set.modes[jm].order == 0;
    if (target) CHECK(set.modes[jm].lambda == 6.0);
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir) {
      if (target)
        CHECK(set.u_modes[jm][ir] == doctest::Approx(r_grid[ir]).epsilon(1e-12));
      else
        CHECK(std::abs(set.u_modes[jm][ir]) <= 1e-10);
    }
  }
}

TEST_CASE("roundtrip and Parseval for random band-limited fields (seed 11)") {
  std::mt19937_64 rng(11);
  for (int n_dim : {2, 3}) {
    const int band = 8;
    const auto quad = AngularQuadrature::make(n_dim, band);
    const auto basis = harmonic_basis(quad, band);
    const auto r_grid = linspace(1.0, 4.0, 7);
    std::vector<std::vector<double>> coef(basis.size(), std::vector<double>(r_grid.size()));
    for (auto& row : coef)
      for (auto& c : row) c = uniform(rng, -1.0, 1.0);

    std::vector<std::vector<double>> u(r_grid.size(), std::vector<double>(quad.size(), 0.0));
    for (std::size_t jm = 0; jm < basis.size(); ++jm)
      for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
        for (std::size_t k = 0; k < quad.size(); ++k)
          u[ir][k] += coef[jm][ir] * basis[jm].phi[k];

    const auto set = decompose(u, r_grid, quad, band);
    double mode_err = 0.0;
    for (std::size_t jm = 0; jm < basis.size(); ++jm)
      for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
        mode_err = std::max(mode_err, std::abs(set.u_modes[jm][ir] - coef[jm][ir]));
    CHECK(mode_err <= 1e-10);

    const auto back = reconstruct(set);
    double sup = 0.0;
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
      for (std::size_t k = 0; k < quad.size(); ++k)
        sup = std::max(sup, std::abs(back[ir][k] - u[ir][k]));
    CHECK(sup <= 1e-8);

    // Parseval at each radius: sum_j u_j^2 == quadrature L2 norm (band-limited)
    for (std::size_t ir = 0; ir < r_grid.size(); ++ir) {
      double retained = 0.0;
      for (std::size_t jm = 0; jm < basis.size(); ++jm)
        retained += set.u_modes[jm][ir] * set.u_modes[jm][ir];
      double norm2 = 0.0;
      for (std::size_t k = 0; k < quad.size(); ++k)
        norm2 += quad.nodes()[k].weight * u[ir][k] * u[ir][k];
      CHECK(retained == doctest::Approx(norm2).epsilon(1e-8));
      CHECK(set.truncation_energy[ir] <= 1e-8 * std::max(1.0, norm2));
    }
  }
}

TEST_CASE("decompose rejects a quadrature built for a smaller band") {
  const auto quad = AngularQuadrature::make(3, 2);
  std::vector<std::vector<double>> u(2, std::vector<double>(quad.size(), 1.0));
  CHECK_THROWS_AS(decompose(u, {1.0, 2.0}, quad, 5), QuadratureTooCoarse);
}

TEST_CASE("reconstruct edge cases") {
  SphericalModeSet empty;
  empty.n_dim = 3;
  empty.quad = AngularQuadrature::make(3, 1);
  empty.radial_grid = {1.0, 2.0};
  const auto zeros = reconstruct(empty);
  for (const auto& row : zeros)
    for (double v : row) CHECK(v == 0.0);

  // single constant mode with coefficient c reconstructs c / sqrt(|S|)
  SphericalModeSet one;
  one.n_dim = 3;
  one.quad = AngularQuadrature::make(3, 1);
  one.modes = harmonic_basis(one.quad, 0);
  one.radial_grid = {1.0};
  one.u_modes = {{2.0}};
  const auto u = reconstruct(one);
  for (double v : u[0]) CHECK(v == doctest::Approx(2.0 / std::sqrt(4.0 * kPi)).epsilon(1e-14));
}

TEST_CASE("mode_field assembles the projected operator") {
  const auto radial = constant_field(1.0, 0.0, -1.0, {1.0, 10.0});
  const auto f0 = mode_field(3, 0.0, radial);
  CHECK(f0.drift(2.0) == doctest::Approx(1.0).epsilon(1e-15));  // 2/r at r = 2
  CHECK(f0.potential(5.0) == -1.0);
  CHECK(f0.alpha(3.0) == 1.0);

  const auto f6 = mode_field(3, 6.0, radial);
  CHECK(f6.potential(2.0) == doctest::Approx(-1.0 - 1.5).epsilon(1e-15));

  const auto bad = constant_field(1.0, 0.0, -1.0, {0.0, 10.0});
  CHECK_THROWS_AS(mode_field(3, 0.0, bad), WindowContainsOrigin);
}

TEST_CASE("mode thresholds converge to the j-independent limit at large r") {
  const auto radial = constant_field(1.0, 0.0, -1.0, {1.0, 200.0});
  double prev_gap = 1e300;
  for (double x_tail : {50.0, 100.0, 150.0}) {
    const auto fj = mode_field(3, 6.0, radial);
    const auto tt = threshold_tail(fj, x_tail, 2048);
    const double gap = std::abs(tt.kappa_limsup - 1.0);  // limit = sqrt(sup|V|) = 1
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap <= 2e-2);
}

TEST_CASE("verify_radial_uci on the exterior Bessel-type solution") {
  const auto radial = constant_field(1.0, 0.0, -1.0, {1.0, 10.0});
  const auto quad = AngularQuadrature::make(3, 2);
  const auto r_grid = linspace(1.0, 10.0, 181);
  std::vector<std::vector<double>> u(r_grid.size(), std::vector<double>(quad.size()));
  for (std::size_t ir = 0; ir < r_grid.size(); ++ir)
    for (std::size_t k = 0; k < quad.size(); ++k)
      u[ir][k] = std::exp(-r_grid[ir]) / r_grid[ir];
  const auto set = decompose(u, r_grid, quad, 2);

  // kappa below the tail threshold: hypothesis unmet, nothing can be flagged
  const auto low = verify_radial_uci(set, 0.9, radial, 2.0);
  CHECK(!low.hypothesis_met);
  CHECK(!low.flagged);

  // kappa just above: hypothesis met and the mode passes its own bound
  const auto high = verify_radial_uci(set, 1.01, radial, 2.0);
  CHECK(high.hypothesis_met);
  CHECK(!high.flagged);
  int nontrivial = 0;
  for (const auto& e : high.entries)
    if (!e.trivial) {
      ++nontrivial;
      CHECK(e.report.pass);
    }
  CHECK(nontrivial == 1);
}

TEST_CASE("radialize restricts diagonal operators to a ray") {
  auto identity = [](double, int) { return 1.0; };
  auto zero = [](double) { return 0.0; };
  auto neg1 = [](double) { return -1.0; };
  const auto iso = radialize(3, 0, identity, zero, neg1, {1.0, 50.0}, 1.0, 1.0, 0.0, 1.0);
  CHECK(iso.field.alpha(2.0) == 1.0);
  CHECK(iso.field.drift(2.0) == doctest::Approx(1.0).epsilon(1e-15));  // (N-1)/r
  CHECK(iso.field.potential(7.0) == -1.0);

  auto diag211 = [](double, int i) { return i == 0 ? 2.0 : 1.0; };
  const auto aniso = radialize(3, 0, diag211, zero, neg1, {1.0, 50.0}, 2.0, 1.0, 0.0, 1.0);
  CHECK(aniso.field.alpha(3.0) == 2.0);
  // (Tr A - A_11)/r = (4 - 2)/r
  CHECK(aniso.field.drift(1.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(aniso.field.drift(4.0) == doctest::Approx(0.5).epsilon(1e-15));
  // inflation term vanishes as r grows: drift -> q_1 = 0
  CHECK(std::abs(aniso.field.drift(50.0)) <= 2.0 / 50.0 + 1e-15);
  CHECK(aniso.inflation_C == doctest::Approx(2.0).epsilon(1e-15));

  CHECK_THROWS_AS(radialize(3, 0, identity, zero, neg1, {0.0, 5.0}, 1.0, 1.0, 0.0, 1.0),
                  WindowContainsOrigin);
}
