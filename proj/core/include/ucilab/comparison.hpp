#pragma once

#include "ucilab/rates.hpp"

namespace ucilab {

// Closed-form solution of  v'' + beta v' - gamma v = 0  with v(0) = 1,
// v'(0) = -kappa_prime, i.e.  v(x) = A e^{-kappa x} + B e^{lambda x}.
// Requires kappa_prime > kappa > 0; then B < 0 < 1 < A and v has a unique
// zero xi in (0, inf).
struct ComparisonSolution {
  double beta = 0.0, gamma = 0.0;
  double kappa = 0.0, lambda = 0.0, kappa_prime = 0.0;
  double A = 0.0, B = 0.0;
  double xi = 0.0;  // unique positive zero, bisected to 1e-12

  double v(double x) const;
  double dv(double x) const;
};

ComparisonSolution comparison_v(double beta, double gamma, double kappa_prime);

// Closed-form solution of the Cauchy problem
//   w'' + beta w' + gamma w = 0,  w(0) = 0,  w'(0) = 1,
// on the interval where w > 0, with the evaluation point x_hat per
// discriminant case and the certified positive margin
//   margin = w(x_hat) e^{kappa x_hat} - 1/kappa.
// For gamma = 0 the solution increases forever: x_hat = +inf is flagged and
// margin carries the asymptote 1/beta instead.
struct CauchySolution {
  double beta = 0.0, gamma = 0.0;
  double kappa = 0.0, omega = 0.0;
  DiscriminantCase discriminant = DiscriminantCase::Critical;
  bool increasing_forever = false;
  double x_hat = 0.0;   // +inf when increasing_forever
  double margin = 0.0;  // asymptote 1/beta when increasing_forever

  double w(double x) const;
  double dw(double x) const;
};

CauchySolution cauchy_w(double beta, double gamma);

} // namespace ucilab
