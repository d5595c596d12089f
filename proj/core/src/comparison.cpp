#include "ucilab/comparison.hpp"

#include <cmath>
#include <limits>

namespace ucilab {

double ComparisonSolution::v(double x) const {
  return A * std::exp(-kappa * x) + B * std::exp(lambda * x);
}

double ComparisonSolution::dv(double x) const {
  return -A * kappa * std::exp(-kappa * x) + B * lambda * std::exp(lambda * x);
}

ComparisonSolution comparison_v(double beta, double gamma, double kappa_prime) {
  const RateReport r = sharp_rate(beta, gamma);
  if (!(r.kappa > 0.0)) throw KappaZero("comparison_v: kappa = 0 (beta = gamma = 0)");
  if (!(kappa_prime > r.kappa))
    throw KappaPrimeNotGreater("comparison_v: kappa_prime must exceed kappa");

  ComparisonSolution c;
  c.beta = beta;
  c.gamma = gamma;
  c.kappa = r.kappa;
  c.lambda = r.lambda;
  c.kappa_prime = kappa_prime;
  // A + B = 1,  -A kappa + B lambda = -kappa'  =>  B (kappa+lambda) = kappa - kappa'
  c.B = (r.kappa - kappa_prime) / (r.kappa + r.lambda);
  c.A = 1.0 - c.B;

  // v decreases from 1 and crosses zero once; bracket by doubling, then bisect.
  double hi = 1.0 / r.kappa;
  while (c.v(hi) > 0.0) hi *= 2.0;
  c.xi = bisect([&c](double x) { return c.v(x); }, 0.0, hi, 1e-12);
  return c;
}

double CauchySolution::w(double x) const {
  switch (discriminant) {
    case DiscriminantCase::Overdamped:
      if (omega == 0.0) return x * std::exp(-0.5 * beta * x);
      return 0.5 / omega * std::exp(-0.5 * beta * x) * (std::exp(omega * x) - std::exp(-omega * x));
    case DiscriminantCase::Critical:
      return x * std::exp(-0.5 * beta * x);
    case DiscriminantCase::Oscillatory:
      return std::exp(-0.5 * beta * x) * std::sin(omega * x) / omega;
  }
  return 0.0;
}

double CauchySolution::dw(double x) const {
  const double e = std::exp(-0.5 * beta * x);
  switch (discriminant) {
    case DiscriminantCase::Overdamped: {
      if (omega == 0.0) return e * (1.0 - 0.5 * beta * x);
      const double ch = 0.5 * (std::exp(omega * x) + std::exp(-omega * x));
      const double sh = 0.5 * (std::exp(omega * x) - std::exp(-omega * x));
      return e * (ch - 0.5 * beta * sh / omega);
    }
    case DiscriminantCase::Critical:
      return e * (1.0 - 0.5 * beta * x);
    case DiscriminantCase::Oscillatory:
      return e * (std::cos(omega * x) - 0.5 * beta * std::sin(omega * x) / omega);
  }
  return 0.0;
}

CauchySolution cauchy_w(double beta, double gamma) {
  const RateReport r = sharp_rate(beta, gamma);
  if (!(r.kappa > 0.0)) throw KappaZero("cauchy_w: kappa = 0 (beta = gamma = 0)");

  CauchySolution s;
  s.beta = beta;
  s.gamma = gamma;
  s.kappa = r.kappa;
  s.omega = r.omega;
  s.discriminant = r.discriminant;

  switch (r.discriminant) {
    case DiscriminantCase::Overdamped:
      if (gamma == 0.0) {
        // w = (1 - e^{-beta x}) / beta, increasing with asymptote 1/beta.
        s.increasing_forever = true;
        s.x_hat = std::numeric_limits<double>::infinity();
        s.margin = 1.0 / beta;
        return s;
      }
      // critical point: tanh(omega x) = 2 omega / beta
      s.x_hat = std::atanh(2.0 * s.omega / beta) / s.omega;
      break;
    case DiscriminantCase::Critical:
      s.x_hat = 2.0 / beta;
      break;
    case DiscriminantCase::Oscillatory:
      // evaluation point where the sine factor peaks
      s.x_hat = 0.5 * 3.14159265358979323846 / s.omega;
      break;
  }
  s.margin = s.w(s.x_hat) * std::exp(s.kappa * s.x_hat) - 1.0 / s.kappa;
  return s;
}

} // namespace ucilab
