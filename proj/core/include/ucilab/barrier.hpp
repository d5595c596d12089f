#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "ucilab/field.hpp"

namespace ucilab {

// chi(r, s) = (1 - r/s)^{kappa s} for 0 <= r < s, 0 for r >= s.
// Compactly supported in r, converges to e^{-kappa r} as s -> infinity.
double chi(double r, double s, double kappa);

struct ChiDerivatives {
  double d_r = 0.0;        // -kappa (s/(s-r)) chi
  double d_rr = 0.0;       //  kappa (kappa - 1/s) (s/(s-r))^2 chi
  double d_s = 0.0;        //  kappa chi (log(1 - r/s) + r/(s-r)), exact
  double d_s_bound = 0.0;  //  kappa chi s/(s-r), the upper bound actually used
};

// Closed-form derivatives; DomainError-style rejection for r >= s.
ChiDerivatives chi_derivatives(double r, double s, double kappa);

// Radial space-time coefficients of  P u = u_t - alpha u_rr - (q + alpha
// (N-1)/r) u_r - V u  on (r, t) in [r window] x [t_min, 0], A = alpha I.
class SpaceTimeField {
 public:
  using Fn2 = std::function<double(double, double)>;  // (r, t)

  SpaceTimeField(int n_dim, Interval r_window, double t_min, Fn2 alpha, Fn2 q, Fn2 V,
                 FieldBounds bounds);

  int n_dim() const { return n_dim_; }
  const Interval& r_window() const { return r_window_; }
  double t_min() const { return t_min_; }
  double alpha(double r, double t) const { return alpha_(r, t); }
  double q(double r, double t) const { return q_(r, t); }
  double V(double r, double t) const { return V_(r, t); }
  const FieldBounds& bounds() const { return bounds_; }

  // Stationary field: coefficients ignore t.
  static SpaceTimeField stationary(int n_dim, const CoefficientField1D& field, double t_min);

  // Space-time tail threshold: sup over r >= r_tail, t in [t_min, 0] of
  // |q|/2a + sqrt(q^2/4a^2 + |V|/a) on a sampling grid.
  double tail_threshold(double r_tail, int grid_nr = 512, int grid_nt = 64) const;

 private:
  int n_dim_;
  Interval r_window_;
  double t_min_;
  Fn2 alpha_, q_, V_;
  FieldBounds bounds_;
};

struct Barrier {
  double kappa = 0.0;
  double kappa_tilde = 0.0;  // tail threshold the barrier was built against
  double eps = 0.0;          // kappa - kappa_tilde
  double R = 0.0;
  double h = 0.0;            // must satisfy h >= 1/kappa so that chi_rr >= 0
  double delta = 0.0;
  double C = 0.0;            // drift inflation constant, (N-1) sup alpha for A = alpha I

  // Step-1 admissibility:  -(inf a) eps^2 + kappa C/R + kappa delta
  //                        + kappa (sup a)/h  < 0.
  double admissibility(double alpha_inf, double alpha_sup) const;

  double eta(double abs_x, double t) const;  // chi(|x| - R, delta t + 1/delta + h)
};

// Chooses (R, h, delta) so the admissibility expression is negative with
// margin >= 10% of (inf alpha) eps^2. Throws KappaBelowThreshold if kappa
// does not exceed the space-time tail threshold, or if satisfying the margin
// would need h > 1e9.
Barrier pick_parameters(const SpaceTimeField& field, double kappa, double R1);

struct SubsolutionReport {
  double max_residual = 0.0;      // max over nodes of P eta / node scale (signed)
  double max_positive = 0.0;      // positive part of the above
  bool pass = false;              // max_residual <= 1e-8
  bool invariant_warning = false; // h < 1/kappa: chi_rr < 0 somewhere
  double worst_r = 0.0, worst_t = 0.0;
  std::vector<std::array<double, 4>> samples;  // (r, t, eta, P eta residual)
};

// Evaluates P eta on a grid_nr x grid_nt grid of the region
// -1/delta^2 < t < 0, R < |x| < R + delta t + 1/delta + h (a collar of width
// 1e-6 s is excluded at the support edge) from the closed-form derivatives.
SubsolutionReport verify_subsolution(const SpaceTimeField& field, const Barrier& barrier,
                                     int grid_nr, int grid_nt, bool keep_samples = false);

struct LowerBoundReport {
  bool pass = false;
  double min_margin = 0.0;      // min over t=0 nodes of u - chi(|x|-R, 1/delta + h)
  double min_vs_limit = 0.0;    // min over t=0 nodes of u / e^{-kappa(|x|-R)}
  double normalization = 0.0;   // collar infimum u was divided by
};

// Checks the comparison conclusion u(x,0) >= chi(|x|-R, 1/delta + h) nodewise
// after renormalizing u so that inf over the collar {R <= |x| <= R+h, t < 0}
// equals 1, and reports how u compares against the delta -> 0 limit
// e^{-kappa(|x|-R)}. u[i][k] is the sample at (r_grid[i], t_grid[k]); t_grid
// must contain 0 as its last entry.
LowerBoundReport certify_lower_bound(const std::vector<double>& r_grid,
                                     const std::vector<double>& t_grid,
                                     const std::vector<std::vector<double>>& u, double kappa,
                                     const Barrier& barrier);

struct ChiLimitReport {
  std::vector<double> deviations;  // per delta: max over r of |chi(r, 1/delta+h) - e^{-kappa r}|
  bool decreasing = false;
  bool within_asymptote = false;   // deviations <= 1.25 kappa^2 r^2 delta e^{-kappa r} pointwise
};

// Convergence of the barrier profile to the exponential as delta -> 0.
ChiLimitReport chi_limit_check(double kappa, std::span<const double> r_values,
                               std::span<const double> deltas, double h);

} // namespace ucilab
