#include "ucilab/bounce.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace ucilab {

BounceWitness detect_bounce(const Trajectory& traj, double kappa, double x_bar) {
  if (!(kappa >= 0.0)) throw NegativeInput("detect_bounce: kappa must be >= 0");
  const Interval span = traj.span();
  if (!(x_bar >= span.lo) || !(x_bar < span.hi))
    throw Error("detect_bounce: x_bar outside the trajectory span");

  const double u_bar = traj.eval_u(x_bar);
  const double du_bar = traj.eval_du(x_bar);
  double u_scale = 0.0;
  for (double v : traj.u()) u_scale = std::max(u_scale, std::abs(v));
  if (std::abs(u_bar) <= 1e-14 * u_scale)
    throw PreconditionNotSteep("detect_bounce: u(x_bar) vanishes");
  const double steep = -du_bar / u_bar;
  if (!(steep > kappa * (1.0 + 1e-12) + 1e-300)) {
    std::ostringstream msg;
    msg << "detect_bounce: -u'/u = " << steep << " does not exceed kappa = " << kappa;
    throw PreconditionNotSteep(msg.str());
  }

  const auto& x = traj.grid();
  const auto& u = traj.u();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > x_bar)) continue;
    const double h = x[i] - x_bar;
    const double ratio = -u[i] / u_bar - std::exp(-kappa * h);
    if (ratio > 0.0) {
      BounceWitness w;
      w.x_bar = x_bar;
      w.h = h;
      w.ratio = ratio;
      // First zero of u after x_bar, refined on the dense output. It exists
      // before x_bar + h because u(x_bar + h) opposes u(x_bar).
      w.x_tilde = x[i];
      double prev = x_bar;
      double u_prev = u_bar;
      for (std::size_t j = 0; j <= i; ++j) {
        if (!(x[j] > x_bar)) continue;
        if (u[j] == 0.0) {
          w.x_tilde = x[j];
          break;
        }
        if ((u[j] > 0.0) != (u_prev > 0.0)) {
          w.x_tilde = bisect([&traj](double t) { return traj.eval_u(t); }, prev, x[j],
                             1e-12 * std::max(1.0, x[j]));
          break;
        }
        prev = x[j];
        u_prev = u[j];
      }
      return w;
    }
  }
  std::ostringstream msg;
  msg << "no bounce up to x = " << span.hi << " (falsification candidate or window too short)";
  throw NoBounceInWindow(msg.str());
}

BounceWitness find_bounce(const CoefficientField1D& field, double x_bar, double u_bar,
                          double du_bar, double kappa, double max_h, double tol) {
  double h_window = max_h / 4.0;
  for (;;) {
    h_window = std::min(2.0 * h_window, max_h);
    const double x_end = std::min(x_bar + h_window, field.window().hi);
    Trajectory traj = solve_linear_ivp(field, x_bar, u_bar, du_bar, x_end, tol);
    try {
      return detect_bounce(traj, kappa, x_bar);
    } catch (const NoBounceInWindow&) {
      if (x_end >= field.window().hi || h_window >= max_h) throw;
    }
  }
}

EnvelopeReport envelope(const Trajectory& traj, double kappa) {
  const auto& x = traj.grid();
  const auto& u = traj.u();
  EnvelopeReport r;
  r.samples.reserve(x.size());
  r.log_sup_env = -std::numeric_limits<double>::infinity();
  r.argmax = x.front();
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double log_env =
        (u[i] == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(u[i]))) +
        kappa * x[i];
    r.samples.emplace_back(x[i], std::exp(log_env));
    if (log_env > r.log_sup_env) {
      r.log_sup_env = log_env;
      r.argmax = x[i];
    }
  }
  r.sup_env = std::exp(r.log_sup_env);
  return r;
}

UciReport verify_uci(const CoefficientField1D& field, const Trajectory& traj, double x0,
                     double tol_thm, int sup_grid_n) {
  const Interval span = traj.span();
  if (!(x0 >= span.lo) || !(x0 < span.hi)) throw Error("verify_uci: x0 outside trajectory span");

  const double res = max_relative_residual(traj, field);
  if (res > traj.meta().residual_tol) {
    std::ostringstream msg;
    msg << "verify_uci: trajectory residual " << res << " exceeds tolerance "
        << traj.meta().residual_tol;
    throw ResidualTooLarge(msg.str());
  }

  const SupRatios sr = sup_ratios(field, sup_grid_n);
  const RateReport rate = sharp_rate(sr.beta, sr.gamma);

  UciReport rep;
  rep.kappa = rate.kappa;
  rep.beta = sr.beta;
  rep.gamma = sr.gamma;
  rep.tol_thm = tol_thm;

  const double u0 = traj.eval_u(x0);
  const double log_target =
      (u0 == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(std::abs(u0))) +
      rate.kappa * x0;

  double log_sup = -std::numeric_limits<double>::infinity();
  const auto& x = traj.grid();
  const auto& u = traj.u();
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < x0 || u[i] == 0.0) continue;
    log_sup = std::max(log_sup, std::log(std::abs(u[i])) + rate.kappa * x[i]);
  }

  rep.sup_env_after_x0 = std::exp(log_sup);
  rep.lower_bound = (1.0 - tol_thm) * std::exp(log_target);
  rep.pass = log_sup >= std::log1p(-tol_thm) + log_target ||
             log_target == -std::numeric_limits<double>::infinity();
  return rep;
}

GapScan dense_gap_scan(const Trajectory& traj, double kappa_prime) {
  if (!(kappa_prime > 0.0)) throw Error("dense_gap_scan: kappa_prime must be positive");
  const auto& x = traj.grid();
  const auto& u = traj.u();
  const double x_lo = x.front();
  const double u0 = u.front();
  if (u0 == 0.0) throw NotNormalizable("dense_gap_scan: u(x_lo) = 0");
  const double log_u0 = std::log(std::abs(u0));

  // log |u(x)/u0| + kappa' (x - x_lo) <= 0 marks the "too small" region.
  auto below = [&](std::size_t i) {
    if (u[i] == 0.0) return true;
    return std::log(std::abs(u[i])) - log_u0 + kappa_prime * (x[i] - x_lo) <= 0.0;
  };

  GapScan scan;
  std::size_t i = 0;
  const std::size_t n = x.size();
  while (i < n) {
    if (!below(i)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < n && below(j + 1)) ++j;
    if (j > i) {  // single-point touches (e.g. equality at x_lo) are not gaps
      scan.gaps.push_back(Interval{x[i], x[j]});
      scan.max_gap = std::max(scan.max_gap, x[j] - x[i]);
    }
    i = j + 1;
  }
  return scan;
}

} // namespace ucilab
