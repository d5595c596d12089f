#pragma once

#include <string>

#include "ucilab/field.hpp"

namespace ucilab {

// Discriminant of X^2 - beta X - gamma relative to the normalized operator
// u'' + beta u' - gamma u (decaying branch). Classified with the tolerance
// |beta^2 - 4 gamma| <= 1e-12 * max(1, beta^2).
enum class DiscriminantCase { Overdamped, Critical, Oscillatory };

const char* to_string(DiscriminantCase c);

struct RateReport {
  double kappa = 0.0;        //  beta/2 + sqrt(beta^2/4 + gamma)
  double lambda = 0.0;       // -beta/2 + sqrt(beta^2/4 + gamma)
  double omega = 0.0;        //  sqrt(|beta^2 - 4 gamma|) / 2
  DiscriminantCase discriminant = DiscriminantCase::Critical;
  double beta = 0.0;
  double gamma = 0.0;
};

// Sharp decay rate from the normalized coefficient sups. Throws NegativeInput.
RateReport sharp_rate(double beta, double gamma);

struct TailThresholds {
  // sup over the tail grid of the pointwise combination
  //   |q|/2a + sqrt(q^2/4a^2 + |V|/a)
  double kappa_limsup = 0.0;
  // sup(|q|/a) + sqrt(sup(|V|/a)) over the same tail: combination of sups,
  // always >= kappa_limsup.
  double kappa_abg = 0.0;
  double x_tail = 0.0;
  // where the tail maxima of |q|/a and |V|/a were attained (grid argmax)
  double argmax_q = 0.0;
  double argmax_v = 0.0;
};

// Finite-window surrogate for the limsup thresholds: sups are taken over the
// tail sub-window [x_tail, x_hi]. Throws EmptyTail if x_tail >= x_hi.
TailThresholds threshold_tail(const CoefficientField1D& field, double x_tail, int grid_n = 4096);

// Default tail choice: the last 20% of the window.
double default_tail_start(const Interval& window);

// Q(X) = alpha X^2 - |q| X - |V|. Its largest root is the sharp rate of the
// ratios (|q|/alpha, |V|/alpha).
double q_poly(double alpha, double q_abs, double v_abs, double X);

} // namespace ucilab
