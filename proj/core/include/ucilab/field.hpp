#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ucilab/numerics.hpp"

namespace ucilab {

// Certified pointwise bounds on a coefficient triple over its window.
// "Certified" means: established analytically by the profile constructor,
// not inferred from samples. Sampling only cross-checks them.
struct FieldBounds {
  double alpha_inf = 1.0;  // inf alpha > 0
  double alpha_sup = 1.0;
  double q_sup = 0.0;      // sup |q|
  double v_sup = 0.0;      // sup |V|
};

// Coefficients of  L u = alpha(x) u'' + q(x) u' + V(x) u  on a half-line
// window [x_lo, x_hi], x_lo >= 0. Closed-form evaluators plus bound metadata;
// sampling resolution is always the caller's choice.
class CoefficientField1D {
 public:
  using Fn = std::function<double(double)>;

  CoefficientField1D(Interval window, Fn alpha, Fn drift, Fn potential, FieldBounds bounds,
                     std::string name = "field");

  double alpha(double x) const { return alpha_(x); }
  double drift(double x) const { return drift_(x); }
  double potential(double x) const { return potential_(x); }

  const Interval& window() const { return window_; }
  const FieldBounds& bounds() const { return bounds_; }
  const std::string& name() const { return name_; }

  // Sample-checks the invariants (alpha >= alpha_inf > 0, |q| <= q_sup,
  // |V| <= v_sup). Throws NonPositiveAlpha / ParameterOutOfRange.
  void check_bounds(int grid_n = 1024) const;

 private:
  Interval window_;
  Fn alpha_, drift_, potential_;
  FieldBounds bounds_;
  std::string name_;
};

struct SupRatios {
  double beta = 0.0;   // max over grid of |q| / alpha
  double gamma = 0.0;  // max over grid of |V| / alpha
};

// Grid maxima of |q|/alpha and |V|/alpha over the whole window.
SupRatios sup_ratios(const CoefficientField1D& field, int grid_n);

using ParamMap = std::map<std::string, double>;

// Profile library. Available names:
//   constant(a, q, v)                     params: a, q, v, x_lo, x_hi
//   piecewise_constant                    params: breaks.K, alpha.K, q.K, v.K, x_lo, x_hi
//   smooth_random                         params: terms, alpha_base, alpha_amp, q_amp, v_amp,
//                                                 freq_max, x_lo, x_hi   (+ seed)
//   radial_bessel_like                    params: n_dim, x_lo, x_hi
// Same (name, params, seed) always yields bit-identical sample values.
CoefficientField1D make_profile(const std::string& name, const ParamMap& params,
                                std::uint64_t seed = 0);

std::vector<std::string> profile_names();

// Shorthands used all over the tests.
CoefficientField1D constant_field(double a, double q, double v, Interval window = {0.0, 10.0});

} // namespace ucilab
