#include "ucilab/barrier.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ucilab {

double chi(double r, double s, double kappa) {
  if (!(r >= 0.0)) throw DomainError("chi: r must be >= 0");
  if (!(s > 0.0) || !(kappa > 0.0)) throw DomainError("chi: need s > 0 and kappa > 0");
  if (r >= s) return 0.0;
  return std::exp(kappa * s * std::log1p(-r / s));
}

ChiDerivatives chi_derivatives(double r, double s, double kappa) {
  if (!(r >= 0.0) || !(r < s)) throw DomainError("chi_derivatives: need 0 <= r < s");
  if (!(kappa > 0.0)) throw DomainError("chi_derivatives: kappa must be positive");
  const double c = chi(r, s, kappa);
  const double ratio = s / (s - r);
  ChiDerivatives d;
  d.d_r = -kappa * ratio * c;
  d.d_rr = kappa * (kappa - 1.0 / s) * ratio * ratio * c;
  d.d_s = kappa * c * (std::log1p(-r / s) + r / (s - r));
  d.d_s_bound = kappa * c * ratio;
  return d;
}

SpaceTimeField::SpaceTimeField(int n_dim, Interval r_window, double t_min, Fn2 alpha, Fn2 q, Fn2 V,
                               FieldBounds bounds)
    : n_dim_(n_dim), r_window_(r_window), t_min_(t_min), alpha_(std::move(alpha)),
      q_(std::move(q)), V_(std::move(V)), bounds_(bounds) {
  if (n_dim_ < 1) throw Error("SpaceTimeField: n_dim must be >= 1");
  if (!(t_min_ < 0.0)) throw Error("SpaceTimeField: t_min must be negative");
  if (!(bounds_.alpha_inf > 0.0)) throw NonPositiveAlpha("SpaceTimeField: alpha_inf must be > 0");
}

SpaceTimeField SpaceTimeField::stationary(int n_dim, const CoefficientField1D& field,
                                          double t_min) {
  return SpaceTimeField(
      n_dim, field.window(), t_min, [field](double r, double) { return field.alpha(r); },
      [field](double r, double) { return field.drift(r); },
      [field](double r, double) { return field.potential(r); }, field.bounds());
}

double SpaceTimeField::tail_threshold(double r_tail, int grid_nr, int grid_nt) const {
  if (!(r_tail < r_window_.hi)) throw EmptyTail("tail_threshold: r_tail >= window end");
  const auto rs = linspace(std::max(r_tail, r_window_.lo), r_window_.hi, grid_nr);
  const auto ts = linspace(t_min_, 0.0, grid_nt);
  double worst = 0.0;
  for (double r : rs)
    for (double t : ts) {
      const double a = alpha_(r, t);
      if (!(a > 0.0)) throw NonPositiveAlpha("tail_threshold: alpha <= 0");
      const double qr = std::abs(q_(r, t)) / a;
      const double vr = std::abs(V_(r, t)) / a;
      worst = std::max(worst, 0.5 * qr + std::sqrt(0.25 * qr * qr + vr));
    }
  return worst;
}

double Barrier::admissibility(double alpha_inf, double alpha_sup) const {
  const double drift_term = C > 0.0 ? kappa * C / R : 0.0;
  return -alpha_inf * eps * eps + drift_term + kappa * delta + kappa * alpha_sup / h;
}

double Barrier::eta(double abs_x, double t) const {
  const double s = delta * t + 1.0 / delta + h;
  return chi(std::max(abs_x - R, 0.0), s, kappa);
}

Barrier pick_parameters(const SpaceTimeField& field, double kappa, double R1) {
  if (!(kappa > 0.0)) throw KappaBelowThreshold("pick_parameters: kappa must be positive");
  Barrier b;
  b.kappa = kappa;
  b.kappa_tilde = field.tail_threshold(R1);
  b.eps = kappa - b.kappa_tilde;
  if (!(b.eps > 0.0))
    throw KappaBelowThreshold("pick_parameters: kappa does not exceed the tail threshold");
  b.C = (field.n_dim() - 1.0) * field.bounds().alpha_sup;

  // Split 90% of (inf alpha) eps^2 equally across the three positive terms;
  // the remaining 10% is the required margin.
  const double budget = 0.9 * field.bounds().alpha_inf * b.eps * b.eps / 3.0;
  b.R = (b.C > 0.0) ? std::max(R1 * 1.01, kappa * b.C / budget) : std::max(R1 * 1.01, R1 + 1.0);
  b.h = std::max(1.0 / kappa, kappa * field.bounds().alpha_sup / budget);
  b.delta = budget / kappa;
  if (b.h > 1e9) {
    std::ostringstream msg;
    msg << "pick_parameters: admissible h = " << b.h << " exceeds 1e9 (eps = " << b.eps << ")";
    throw KappaBelowThreshold(msg.str());
  }
  return b;
}

SubsolutionReport verify_subsolution(const SpaceTimeField& field, const Barrier& barrier,
                                     int grid_nr, int grid_nt, bool keep_samples) {
  if (grid_nr < 8 || grid_nt < 8)
    throw GridTooCoarse("verify_subsolution: need at least an 8x8 grid");

  SubsolutionReport rep;
  rep.invariant_warning = barrier.h < 1.0 / barrier.kappa;
  rep.max_residual = -std::numeric_limits<double>::infinity();

  const double t_lo = std::max(-1.0 / (barrier.delta * barrier.delta), field.t_min());
  const double N1 = field.n_dim() - 1.0;
  for (int k = 0; k < grid_nt; ++k) {
    const double t = t_lo * (k + 0.5) / grid_nt;  // strictly inside (t_lo, 0)
    const double s = barrier.delta * t + 1.0 / barrier.delta + barrier.h;
    const double r_max = s * (1.0 - 1e-6);  // collar excluded at the support edge
    for (int i = 0; i < grid_nr; ++i) {
      const double r = r_max * (i + 0.5) / grid_nr;
      const double abs_x = barrier.R + r;
      const ChiDerivatives d = chi_derivatives(r, s, barrier.kappa);
      const double c = chi(r, s, barrier.kappa);
      const double a = field.alpha(abs_x, t);
      const double q = field.q(abs_x, t);
      const double v = field.V(abs_x, t);
      const double drift = q + a * N1 / abs_x;
      const double P_eta = barrier.delta * d.d_s - a * d.d_rr - drift * d.d_r - v * c;
      const double scale = std::abs(barrier.delta * d.d_s) + std::abs(a * d.d_rr) +
                           std::abs(drift * d.d_r) + std::abs(v * c) +
                           std::numeric_limits<double>::min();
      const double res = P_eta / scale;
      if (res > rep.max_residual) {
        rep.max_residual = res;
        rep.worst_r = abs_x;
        rep.worst_t = t;
      }
      if (keep_samples) rep.samples.push_back({abs_x, t, c, res});
    }
  }
  rep.max_positive = std::max(rep.max_residual, 0.0);
  rep.pass = rep.max_residual <= 1e-8;
  return rep;
}

LowerBoundReport certify_lower_bound(const std::vector<double>& r_grid,
                                     const std::vector<double>& t_grid,
                                     const std::vector<std::vector<double>>& u, double kappa,
                                     const Barrier& barrier) {
  if (u.size() != r_grid.size()) throw Error("certify_lower_bound: u rows must match r_grid");
  if (t_grid.empty() || t_grid.back() != 0.0)
    throw Error("certify_lower_bound: t_grid must end at t = 0");
  for (const auto& row : u) {
    if (row.size() != t_grid.size()) throw Error("certify_lower_bound: u cols must match t_grid");
    for (double v : row)
      if (!(v > 0.0)) throw NotPositive("certify_lower_bound: u must be positive");
  }

  double collar_inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (r_grid[i] < barrier.R || r_grid[i] > barrier.R + barrier.h) continue;
    for (std::size_t k = 0; k + 1 < t_grid.size(); ++k)  // t < 0 only
      collar_inf = std::min(collar_inf, u[i][k]);
  }
  if (!std::isfinite(collar_inf))
    throw NormalizationCollarEmpty("certify_lower_bound: no grid nodes in the collar");

  LowerBoundReport rep;
  rep.normalization = collar_inf;
  rep.min_margin = std::numeric_limits<double>::infinity();
  rep.min_vs_limit = std::numeric_limits<double>::infinity();
  const double s0 = 1.0 / barrier.delta + barrier.h;
  for (std::size_t i = 0; i < r_grid.size(); ++i) {
    if (r_grid[i] < barrier.R) continue;
    const double un = u[i].back() / collar_inf;
    const double target = chi(r_grid[i] - barrier.R, s0, kappa);
    rep.min_margin = std::min(rep.min_margin, un - target);
    rep.min_vs_limit = std::min(rep.min_vs_limit, un * std::exp(kappa * (r_grid[i] - barrier.R)));
  }
  rep.pass = rep.min_margin >= -1e-12;
  return rep;
}

ChiLimitReport chi_limit_check(double kappa, std::span<const double> r_values,
                               std::span<const double> deltas, double h) {
  ChiLimitReport rep;
  rep.decreasing = true;
  rep.within_asymptote = true;
  double prev = std::numeric_limits<double>::infinity();
  for (double delta : deltas) {
    if (!(delta > 0.0)) throw Error("chi_limit_check: deltas must be positive");
    const double s = 1.0 / delta + h;
    double dev = 0.0;
    for (double r : r_values) {
      const double d = std::abs(chi(r, s, kappa) - std::exp(-kappa * r));
      dev = std::max(dev, d);
      const double bound = 1.25 * kappa * kappa * r * r * delta * std::exp(-kappa * r) + 1e-15;
      if (d > bound) rep.within_asymptote = false;
    }
    if (dev > prev * (1.0 + 1e-12)) rep.decreasing = false;
    prev = dev;
    rep.deviations.push_back(dev);
  }
  return rep;
}

} // namespace ucilab
