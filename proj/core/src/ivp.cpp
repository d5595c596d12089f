#include "ucilab/ivp.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace ucilab {

namespace {

using State = std::array<double, 2>;  // (u, u')
using Rhs = std::function<double(double, const State&)>;  // returns u''

struct StepResult {
  State y;
  double ddu_end;  // u'' at the step end (FSAL stage)
  double error;    // weighted rms error estimate
};

// Dormand-Prince 5(4) coefficients.
constexpr double C2 = 1.0 / 5, C3 = 3.0 / 10, C4 = 4.0 / 5, C5 = 8.0 / 9;
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
                 E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;

State deriv(const Rhs& rhs, double x, const State& y) {
  return {y[1], rhs(x, y)};
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> ks) {
  State out = y;
  for (auto& [c, k] : ks) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

StepResult dp45_step(const Rhs& rhs, double x, const State& y, const State& k1, double h,
                     double rtol) {
  const State k2 = deriv(rhs, x + C2 * h, axpy(y, h, {{A21, &k1}}));
  const State k3 = deriv(rhs, x + C3 * h, axpy(y, h, {{A31, &k1}, {A32, &k2}}));
  const State k4 = deriv(rhs, x + C4 * h, axpy(y, h, {{A41, &k1}, {A42, &k2}, {A43, &k3}}));
  const State k5 =
      deriv(rhs, x + C5 * h, axpy(y, h, {{A51, &k1}, {A52, &k2}, {A53, &k3}, {A54, &k4}}));
  const State k6 = deriv(
      rhs, x + h, axpy(y, h, {{A61, &k1}, {A62, &k2}, {A63, &k3}, {A64, &k4}, {A65, &k5}}));
  const State ynew =
      axpy(y, h, {{B1, &k1}, {B3, &k3}, {B4, &k4}, {B5, &k5}, {B6, &k6}});
  const State k7 = deriv(rhs, x + h, ynew);

  double err = 0.0;
  const double pair_scale = std::max({std::abs(y[0]), std::abs(y[1]), std::abs(ynew[0]),
                                      std::abs(ynew[1]), 1e-290});
  for (int i = 0; i < 2; ++i) {
    const double e = h * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] + E6 * k6[i] +
                          E7 * k7[i]);
    const double w = rtol * (std::max(std::abs(y[i]), std::abs(ynew[i])) + 0.01 * pair_scale);
    err = std::max(err, std::abs(e) / w);
  }
  return {ynew, k7[1], err};
}

struct EventSpec {
  // Sign each component is required to keep within the current smooth
  // segment; 0 disables the watch.
  int sign_u = 0;
  int sign_du = 0;
};

struct Integration {
  std::vector<double> x, u, du, ddu;
};

int sgn(double v) { return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0); }

// Integrates rhs on [x0, x_end]. If events is non-null, stops early at the
// first zero crossing of a watched component (located by bisection on the
// cubic Hermite dense output) and reports it in *event_x.
void integrate(const Rhs& rhs, double x0, State y0, double x_end, double rtol, Integration& out,
               const EventSpec* events, double* event_x) {
  const int max_steps = 4'000'000;
  double x = x0;
  State y = y0;
  State k1 = deriv(rhs, x, y);

  if (out.x.empty()) {
    out.x.push_back(x);
    out.u.push_back(y[0]);
    out.du.push_back(y[1]);
    out.ddu.push_back(k1[1]);
  }

  const double span = x_end - x0;
  const double rhs_scale = std::abs(k1[1]) + std::abs(y[1]) + 1e-8;
  const double y_scale = std::abs(y[0]) + std::abs(y[1]) + 1e-8;
  double h = std::min(span / 16.0, 0.1 * y_scale / rhs_scale);
  h = std::max(h, span * 1e-12);

  if (event_x) *event_x = std::numeric_limits<double>::quiet_NaN();

  for (int step = 0; step < max_steps; ++step) {
    if (x >= x_end) return;
    h = std::min(h, x_end - x);
    const double h_min = 32.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), 1.0);
    if (h < h_min) {
      std::ostringstream msg;
      msg << "step underflow at x = " << x << " (h = " << h << ")";
      throw IntegratorFailure(msg.str());
    }

    StepResult s = dp45_step(rhs, x, y, k1, h, rtol);
    if (!std::isfinite(s.error) || !std::isfinite(s.y[0]) || !std::isfinite(s.y[1])) {
      h *= 0.25;
      continue;
    }
    if (s.error > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(s.error, -0.25));
      continue;
    }

    double x_new = x + h;
    State y_new = s.y;
    double ddu_new = s.ddu_end;
    bool stop_at_event = false;

    if (events) {
      auto crossed = [&](double v, int sign) { return sign != 0 && sgn(v) == -sign; };
      const bool cu = crossed(y_new[0], events->sign_u);
      const bool cdu = crossed(y_new[1], events->sign_du);
      if (cu || cdu) {
        // Hermite dense output for each component on [x, x_new].
        auto comp = [&](int i, double xx) {
          const double d0 = (i == 0) ? y[1] : k1[1];
          const double d1 = (i == 0) ? y_new[1] : ddu_new;
          return hermite_value(xx, x, x_new, y[i], y_new[i], d0, d1);
        };
        const double xtol = 1e-12 * std::max(1.0, std::abs(x_new));
        double xe = x_new;
        if (cu) xe = std::min(xe, bisect([&](double t) { return comp(0, t); }, x, x_new, xtol));
        if (cdu) xe = std::min(xe, bisect([&](double t) { return comp(1, t); }, x, x_new, xtol));
        xe = std::max(xe, x + xtol);  // guarantee forward progress past the kink
        x_new = xe;
        y_new = {comp(0, xe), comp(1, xe)};
        ddu_new = rhs(xe, y_new);
        stop_at_event = true;
      }
    }

    out.x.push_back(x_new);
    out.u.push_back(y_new[0]);
    out.du.push_back(y_new[1]);
    out.ddu.push_back(ddu_new);

    if (stop_at_event) {
      *event_x = x_new;
      return;
    }

    x = x_new;
    y = y_new;
    k1 = {y[1], ddu_new};
    h *= std::min(5.0, std::max(0.2, 0.9 * std::pow(std::max(s.error, 1e-10), -0.2)));
  }
  throw IntegratorFailure("step budget exhausted");
}

} // namespace

Trajectory solve_linear_ivp(const CoefficientField1D& field, double x0, double u0, double du0,
                            double x_end, double tol) {
  if (!(tol > 0.0)) throw Error("solve_linear_ivp: tol must be positive");
  if (!(x_end > x0)) throw Error("solve_linear_ivp: need x_end > x0");
  if (!field.window().contains(Interval{x0, x_end}))
    throw WindowExceeded("solve_linear_ivp: [x0, x_end] outside field window");

  Rhs rhs = [&field](double x, const State& y) {
    return (-field.drift(x) * y[1] - field.potential(x) * y[0]) / field.alpha(x);
  };
  Integration out;
  integrate(rhs, x0, {u0, du0}, x_end, tol, out, nullptr, nullptr);
  TrajectoryMeta meta{"dp45", tol, field.name(), 1e-3};
  return Trajectory(std::move(out.x), std::move(out.u), std::move(out.du), std::move(meta),
                    std::move(out.ddu));
}

Trajectory solve_extremal(double beta, double gamma, ExtremalVariant variant, double x0, double u0,
                          double du0, double x_end, double tol) {
  if (beta < 0.0 || gamma < 0.0) throw NegativeInput("solve_extremal: beta, gamma must be >= 0");
  if (!(tol > 0.0) || !(x_end > x0)) throw Error("solve_extremal: bad tol or interval");
  const double s = (variant == ExtremalVariant::Lower) ? 1.0 : -1.0;

  Integration out;
  double x = x0;
  State y{u0, du0};
  int sign_u = sgn(u0) != 0 ? sgn(u0) : sgn(du0);
  int sign_du = sgn(du0);
  const double scale0 = std::abs(u0) + std::abs(du0);

  while (x < x_end) {
    if (std::abs(y[0]) + std::abs(y[1]) < 1e-300 * std::max(1.0, scale0)) {
      // u and u' vanish together: the solution continues as identically zero.
      out.x.push_back(x_end);
      out.u.push_back(0.0);
      out.du.push_back(0.0);
      out.ddu.push_back(0.0);
      break;
    }
    if (sign_du == 0) {
      // At a critical point the curvature decides which |u'| branch starts.
      const double curv = s * (gamma * std::abs(y[0]));
      sign_du = sgn(curv);
    }
    if (sign_u == 0) sign_u = sgn(y[1]);

    const double cu = s * gamma * sign_u;
    const double cdu = s * beta * sign_du;
    Rhs rhs = [cu, cdu](double, const State& yy) { return cdu * yy[1] + cu * yy[0]; };

    EventSpec ev{sign_u, sign_du};
    double event_x;
    integrate(rhs, x, y, x_end, tol, out, &ev, &event_x);

    x = out.x.back();
    y = {out.u.back(), out.du.back()};
    if (!std::isfinite(event_x)) break;  // reached x_end

    // Flip whichever component crossed; snap tiny values to exact zero.
    const double tiny = 1e-12 * (std::abs(y[0]) + std::abs(y[1]) + scale0);
    if (std::abs(y[0]) <= tiny) {
      y[0] = 0.0;
      out.u.back() = 0.0;
      sign_u = sgn(y[1]);
    }
    if (std::abs(y[1]) <= tiny) {
      y[1] = 0.0;
      out.du.back() = 0.0;
      sign_du = 0;  // re-derived from curvature on the next segment
    }
  }

  std::ostringstream name;
  name << (variant == ExtremalVariant::Lower ? "extremal_lower" : "extremal_upper") << "(beta="
       << beta << ",gamma=" << gamma << ")";
  TrajectoryMeta meta{"dp45+events", tol, name.str(), 1e-3};
  return Trajectory(std::move(out.x), std::move(out.u), std::move(out.du), std::move(meta),
                    std::move(out.ddu));
}

} // namespace ucilab
