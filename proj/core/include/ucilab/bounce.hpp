#pragma once

#include <utility>
#include <vector>

#include "ucilab/ivp.hpp"
#include "ucilab/rates.hpp"
#include "ucilab/trajectory.hpp"

namespace ucilab {

// Witness of the bouncing property at x_bar: the solution is steeper there
// than e^{-kappa x}, crosses zero at x_tilde, and at x_bar + h exceeds the
// exponential with opposite sign:  -u(x_bar+h)/u(x_bar) > e^{-kappa h}.
struct BounceWitness {
  double x_bar = 0.0;
  double x_tilde = 0.0;  // first zero of u after x_bar
  double h = 0.0;
  double ratio = 0.0;    // -u(x_bar+h)/u(x_bar) - e^{-kappa h}, > 0
};

// Finds the smallest grid offset h > 0 with -u(x_bar+h)/u(x_bar) > e^{-kappa h}.
// u, u' at x_bar are interpolated from the dense output. Throws
// PreconditionNotSteep if -u'(x_bar)/u(x_bar) <= kappa (or u(x_bar) = 0) and
// NoBounceInWindow if the trajectory ends before the bounce shows up.
BounceWitness detect_bounce(const Trajectory& traj, double kappa, double x_bar);

// Convenience driver: integrates L u = 0 from (u_bar, du_bar) at x_bar and
// retries detect_bounce on windows doubling up to x_bar + max_h.
BounceWitness find_bounce(const CoefficientField1D& field, double x_bar, double u_bar,
                          double du_bar, double kappa, double max_h, double tol = 1e-10);

struct EnvelopeReport {
  double sup_env = 0.0;
  double log_sup_env = 0.0;  // overflow-safe form of sup_env
  double argmax = 0.0;
  std::vector<std::pair<double, double>> samples;  // (x, |u(x)| e^{kappa x})
};

// The envelope |u(x)| e^{kappa x} over the trajectory grid.
EnvelopeReport envelope(const Trajectory& traj, double kappa);

struct UciReport {
  double kappa = 0.0;
  double beta = 0.0, gamma = 0.0;
  double sup_env_after_x0 = 0.0;  // sup over grid points >= x0 (and x0 itself)
  double lower_bound = 0.0;       // (1 - tol_thm) |u(x0)| e^{kappa x0}
  double tol_thm = 0.0;
  bool pass = false;
};

// Finite-window check of the envelope bound
//   sup_{x >= x0} |u(x)| e^{kappa x} >= (1 - tol_thm) |u(x0)| e^{kappa x0},
// with kappa = sharp_rate(sup_ratios(field)). The sup is over the grid
// restricted to [x0, end] together with the interpolated value at x0.
// Throws ResidualTooLarge if the trajectory does not solve L u = 0 for this
// field at the meta residual tolerance.
UciReport verify_uci(const CoefficientField1D& field, const Trajectory& traj, double x0,
                     double tol_thm = 1e-2, int sup_grid_n = 8192);

struct GapScan {
  double max_gap = 0.0;
  std::vector<Interval> gaps;  // maximal runs where |u(x)| <= e^{-kappa' (x - x_lo)}
};

// Scans for intervals where the (internally renormalized) solution stays below
// e^{-kappa_prime (x - x_lo)}. Finite max_gap across a family is the
// quantitative density statement. Requires u(x_lo) != 0 (NotNormalizable).
GapScan dense_gap_scan(const Trajectory& traj, double kappa_prime);

} // namespace ucilab
