#pragma once

#include "ucilab/field.hpp"
#include "ucilab/trajectory.hpp"

namespace ucilab {

// Integrates  alpha u'' + q u' + V u = 0  from (u0, du0) at x0 up to x_end
// with an adaptive embedded Runge-Kutta 5(4) pair (Dormand-Prince), pure
// relative error control at tolerance tol. Grid nodes are the accepted steps.
// Throws WindowExceeded if [x0, x_end] is not inside field.window(),
// IntegratorFailure on step underflow.
Trajectory solve_linear_ivp(const CoefficientField1D& field, double x0, double u0, double du0,
                            double x_end, double tol);

// Extremal constant-coefficient operators associated with the ratios
// (beta, gamma):
//   Lower:  u'' - beta |u'| - gamma |u| = 0
//   Upper:  u'' + beta |u'| + gamma |u| = 0
enum class ExtremalVariant { Lower, Upper };

// Integrates the nonsmooth extremal equation. Zero crossings of u and u' are
// located on the dense output by bisection to ~1e-12 and integration restarts
// exactly there; the |.| terms are never smoothed.
Trajectory solve_extremal(double beta, double gamma, ExtremalVariant variant, double x0, double u0,
                          double du0, double x_end, double tol);

} // namespace ucilab
