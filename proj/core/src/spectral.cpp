#include "ucilab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ucilab {

namespace {

// Tridiagonal system with partial pivoting (needed because inverse iteration
// shifts make the matrix indefinite). sub[0] and sup[n-1] are ignored.
std::vector<double> tridiag_solve(std::vector<double> sub, std::vector<double> diag,
                                  std::vector<double> sup, std::vector<double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> fill(n, 0.0);
  double scale = 0.0;
  for (double v : diag) scale = std::max(scale, std::abs(v));
  const double tiny = scale * std::numeric_limits<double>::epsilon() * 1e-2 +
                      std::numeric_limits<double>::min();

  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (std::abs(diag[i]) >= std::abs(sub[i + 1])) {
      if (std::abs(diag[i]) < tiny) diag[i] = (diag[i] < 0 ? -tiny : tiny);
      const double m = sub[i + 1] / diag[i];
      diag[i + 1] -= m * sup[i];
      rhs[i + 1] -= m * rhs[i];
    } else {
      // swap rows i and i+1
      const double m = diag[i] / sub[i + 1];
      std::swap(rhs[i], rhs[i + 1]);
      const double row_d = diag[i + 1];
      const double row_u = (i + 2 < n) ? sup[i + 1] : 0.0;
      diag[i] = sub[i + 1];
      const double old_sup = sup[i];
      sup[i] = row_d;
      fill[i] = row_u;
      diag[i + 1] = old_sup - m * sup[i];
      if (i + 2 < n) sup[i + 1] = -m * fill[i];
      rhs[i + 1] -= m * rhs[i];
    }
  }
  if (std::abs(diag[n - 1]) < tiny) diag[n - 1] = (diag[n - 1] < 0 ? -tiny : tiny);

  std::vector<double> x(n);
  x[n - 1] = rhs[n - 1] / diag[n - 1];
  if (n >= 2) x[n - 2] = (rhs[n - 2] - sup[n - 2] * x[n - 1]) / diag[n - 2];
  for (std::size_t k = n; k-- > 2;) {
    const std::size_t i = k - 2;
    x[i] = (rhs[i] - sup[i] * x[i + 1] - fill[i] * x[i + 2]) / diag[i];
  }
  return x;
}

struct Tridiag {
  std::vector<double> sub, diag, sup;

  std::vector<double> apply(const std::vector<double>& v) const {
    const std::size_t n = diag.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = diag[i] * v[i];
      if (i > 0) y[i] += sub[i] * v[i - 1];
      if (i + 1 < n) y[i] += sup[i] * v[i + 1];
    }
    return y;
  }
};

double inf_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

} // namespace

DirichletEigen dirichlet_lambda1(const CoefficientField1D& field, Interval ab, int mesh_n) {
  if (mesh_n < 16) throw Error("dirichlet_lambda1: mesh_n must be >= 16");
  if (!field.window().contains(ab)) throw WindowExceeded("dirichlet_lambda1: [a,b] outside window");

  // Cell Peclet control: central differencing of q u' is clean only for
  // |q| h / (2 alpha) < 1; refine until h is safely below that.
  const double peclet_h = 1.6 * field.bounds().alpha_inf / std::max(field.bounds().q_sup, 1e-300);
  int n_sub = mesh_n;
  if (ab.length() / n_sub >= peclet_h)
    n_sub = static_cast<int>(std::ceil(ab.length() / peclet_h)) + 1;

  const int n = n_sub - 1;  // interior unknowns
  const double h = ab.length() / n_sub;
  Tridiag T;
  T.sub.resize(n);
  T.diag.resize(n);
  T.sup.resize(n);
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    const double x = ab.lo + h * (i + 1);
    xs[i] = x;
    const double a = field.alpha(x);
    if (!(a > 0.0)) throw NonPositiveAlpha("dirichlet_lambda1: alpha <= 0 on mesh");
    const double q = field.drift(x);
    const double v = field.potential(x);
    T.diag[i] = 2.0 * a / (h * h) - v;
    T.sub[i] = -a / (h * h) + q / (2.0 * h);
    T.sup[i] = -a / (h * h) - q / (2.0 * h);
  }

  // Gershgorin lower bound for Re(spec T); a shift below it makes
  // (T - sigma I) an M-matrix, so inverse iteration preserves positivity.
  double lower = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    double r = T.diag[i];
    if (i > 0) r -= std::abs(T.sub[i]);
    if (i + 1 < n) r -= std::abs(T.sup[i]);
    lower = std::min(lower, r);
  }

  std::vector<double> phi;
  double lambda = 0.0;
  double residual = std::numeric_limits<double>::infinity();

  auto iterate = [&](bool allow_reshift) {
    double sigma = lower - 1.0;
    phi.assign(static_cast<std::size_t>(n), 1.0);
    residual = std::numeric_limits<double>::infinity();
    const double target = 1e-11;
    bool reshifted = false;
    for (int iter = 0; iter < 40000; ++iter) {
      std::vector<double> diag_shifted = T.diag;
      for (int i = 0; i < n; ++i) diag_shifted[i] -= sigma;
      phi = tridiag_solve(T.sub, diag_shifted, T.sup, phi);
      const double nrm = inf_norm(phi);
      if (!(nrm > 0.0) || !std::isfinite(nrm))
        throw ConvergenceFailure("inverse iteration broke down");
      for (auto& v : phi) v /= nrm;

      const auto Tphi = T.apply(phi);
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i) {
        num += phi[i] * Tphi[i];
        den += phi[i] * phi[i];
      }
      lambda = num / den;
      double r = 0.0;
      for (int i = 0; i < n; ++i) r = std::max(r, std::abs(Tphi[i] - lambda * phi[i]));
      residual = r;
      if (residual <= target * std::max(1.0, std::abs(lambda))) break;
      if (allow_reshift && !reshifted && iter >= 8 &&
          residual < 1e-4 * std::max(1.0, std::abs(lambda))) {
        // one Rayleigh re-shift: stays on the safe side of lambda_1 but close
        // enough that convergence finishes in a couple of sweeps
        sigma = lambda - std::max(16.0 * residual, 1e-8 * std::max(1.0, std::abs(lambda)));
        reshifted = true;
      }
    }
  };

  auto positive_inside = [&]() {
    double mx = 0.0;
    for (double v : phi)
      if (std::abs(v) > std::abs(mx)) mx = v;
    for (auto& v : phi) v /= mx;
    for (double v : phi)
      if (!(v > 0.0)) return false;
    return true;
  };

  iterate(true);
  bool positive = positive_inside();
  if (!positive || !(residual <= 1e-8 * std::max(1.0, std::abs(lambda)))) {
    // re-shift may have landed past lambda_1; redo with the plain M-matrix shift
    iterate(false);
    positive = positive_inside();
  }
  if (!(residual <= 1e-8 * std::max(1.0, std::abs(lambda))))
    throw ConvergenceFailure("dirichlet_lambda1: residual did not reach 1e-8");
  if (!positive)
    throw ConvergenceFailure("dirichlet_lambda1: eigenfunction changes sign inside the domain");

  DirichletEigen out;
  out.lambda = lambda;
  out.mesh_n = n_sub;
  out.residual = residual;
  out.x.resize(static_cast<std::size_t>(n) + 2);
  out.phi.resize(static_cast<std::size_t>(n) + 2);
  out.x.front() = ab.lo;
  out.phi.front() = 0.0;
  for (int i = 0; i < n; ++i) {
    out.x[static_cast<std::size_t>(i) + 1] = xs[static_cast<std::size_t>(i)];
    out.phi[static_cast<std::size_t>(i) + 1] = phi[static_cast<std::size_t>(i)];
  }
  out.x.back() = ab.hi;
  out.phi.back() = 0.0;
  return out;
}

EigenEstimate generalized_lambda1(const CoefficientField1D& field, std::vector<double> radii,
                                  double mesh_density) {
  if (radii.size() < 2 || !std::is_sorted(radii.begin(), radii.end()))
    throw Error("generalized_lambda1: need at least two increasing radii");
  if (!(mesh_density > 0.0)) throw Error("generalized_lambda1: mesh_density must be positive");

  EigenEstimate est;
  est.radii = std::move(radii);
  for (double L : est.radii) {
    const Interval ab{field.window().lo, field.window().lo + L};
    const int mesh_n = std::max(16, static_cast<int>(std::lround(L * mesh_density)));
    DirichletEigen e = dirichlet_lambda1(field, ab, mesh_n);
    if (!est.lambdas.empty() &&
        e.lambda > est.lambdas.back() + 1e-9 * std::max(1.0, std::abs(e.lambda))) {
      std::ostringstream msg;
      msg << "generalized_lambda1: lambda increased with the radius (" << est.lambdas.back()
          << " -> " << e.lambda << ")";
      throw ConvergenceFailure(msg.str());
    }
    est.lambdas.push_back(e.lambda);
    est.largest = std::move(e);
  }

  // lambda(L) ~ lambda_inf + c / L^2
  auto extrapolate = [&](std::size_t i, std::size_t j) {
    const double wi = 1.0 / (est.radii[i] * est.radii[i]);
    const double wj = 1.0 / (est.radii[j] * est.radii[j]);
    const double c = (est.lambdas[i] - est.lambdas[j]) / (wi - wj);
    return est.lambdas[i] - c * wi;
  };
  const std::size_t m = est.radii.size();
  est.lambda_inf = extrapolate(m - 2, m - 1);
  if (m >= 3) {
    const double prev = extrapolate(m - 3, m - 2);
    est.err_est = std::abs(est.lambda_inf - prev);
  } else {
    est.err_est = std::abs(est.lambda_inf - est.lambdas.back());
  }
  est.lambda_nonneg = est.lambda_inf >= 0.0;
  return est;
}

bool supersolution_check(const CoefficientField1D& field, const Trajectory& traj, double lambda) {
  if (lambda < 0.0) throw Error("supersolution_check: lambda must be >= 0");
  const auto& x = traj.grid();
  const auto& u = traj.u();
  double u_sup = 0.0;
  for (double v : u) {
    if (!(v > 0.0)) throw NotPositive("supersolution_check: u must be positive on the grid");
    u_sup = std::max(u_sup, v);
  }

  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    const double d1 =
        (u[i + 1] * hm * hm - u[i - 1] * hp * hp + u[i] * (hp * hp - hm * hm)) /
        (hm * hp * (hm + hp));
    const double d2 = 2.0 * (hm * u[i + 1] + hp * u[i - 1] - (hm + hp) * u[i]) /
                      (hm * hp * (hm + hp));
    const double a = field.alpha(x[i]);
    const double Lu = a * d2 + field.drift(x[i]) * d1 + field.potential(x[i]) * u[i];
    const double scale =
        std::abs(a * d2) + std::abs(field.drift(x[i]) * d1) +
        std::abs(field.potential(x[i]) * u[i]) + a * u_sup;
    if (Lu > 1e-8 * scale) return false;
  }
  return true;
}

} // namespace ucilab
