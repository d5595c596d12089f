#include "ucilab/rates.hpp"

#include <cmath>

namespace ucilab {

const char* to_string(DiscriminantCase c) {
  switch (c) {
    case DiscriminantCase::Overdamped: return "overdamped";
    case DiscriminantCase::Critical: return "critical";
    case DiscriminantCase::Oscillatory: return "oscillatory";
  }
  return "?";
}

RateReport sharp_rate(double beta, double gamma) {
  if (beta < 0.0 || gamma < 0.0) throw NegativeInput("sharp_rate: beta, gamma must be >= 0");
  RateReport r;
  r.beta = beta;
  r.gamma = gamma;
  const double s = std::sqrt(0.25 * beta * beta + gamma);
  r.kappa = 0.5 * beta + s;
  r.lambda = gamma > 0.0 ? gamma / r.kappa : s - 0.5 * beta;  // avoids cancellation for small gamma
  const double disc = beta * beta - 4.0 * gamma;
  r.omega = 0.5 * std::sqrt(std::abs(disc));
  const double tie = 1e-12 * std::max(1.0, beta * beta);
  if (std::abs(disc) <= tie)
    r.discriminant = DiscriminantCase::Critical;
  else
    r.discriminant = disc > 0.0 ? DiscriminantCase::Overdamped : DiscriminantCase::Oscillatory;
  return r;
}

double default_tail_start(const Interval& window) {
  return window.hi - 0.2 * window.length();
}

TailThresholds threshold_tail(const CoefficientField1D& field, double x_tail, int grid_n) {
  const Interval w = field.window();
  if (!(x_tail >= w.lo)) throw Error("threshold_tail: x_tail below the window");
  if (!(x_tail < w.hi)) throw EmptyTail("threshold_tail: x_tail >= x_hi leaves an empty tail");
  const auto xs = linspace(x_tail, w.hi, std::max(grid_n, 2));

  TailThresholds t;
  t.x_tail = x_tail;
  double q_ratio_sup = 0.0;
  double v_ratio_sup = 0.0;
  t.argmax_q = xs.front();
  t.argmax_v = xs.front();
  for (double x : xs) {
    const double a = field.alpha(x);
    if (!(a > 0.0)) throw NonPositiveAlpha("threshold_tail: alpha <= 0 on tail");
    const double qr = std::abs(field.drift(x)) / a;
    const double vr = std::abs(field.potential(x)) / a;
    const double pointwise = 0.5 * qr + std::sqrt(0.25 * qr * qr + vr);
    t.kappa_limsup = std::max(t.kappa_limsup, pointwise);
    if (qr > q_ratio_sup) {
      q_ratio_sup = qr;
      t.argmax_q = x;
    }
    if (vr > v_ratio_sup) {
      v_ratio_sup = vr;
      t.argmax_v = x;
    }
  }
  t.kappa_abg = q_ratio_sup + std::sqrt(v_ratio_sup);
  return t;
}

double q_poly(double alpha, double q_abs, double v_abs, double X) {
  return alpha * X * X - q_abs * X - v_abs;
}

} // namespace ucilab
