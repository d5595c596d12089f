#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ucilab/errors.hpp"

namespace ucilab {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double x) const { return x >= lo && x <= hi; }
  bool contains(const Interval& other) const { return other.lo >= lo && other.hi <= hi; }
};

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> x(static_cast<std::size_t>(n));
  if (n == 1) {
    x[0] = a;
    return x;
  }
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = a + h * i;
  x.back() = b;  // avoid h roundoff drift at the right end
  return x;
}

// Uniform in [0,1) from raw engine output. uniform_real_distribution is not
// pinned down by the standard, and byte-identical reruns are a contract here.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64& rng, double a, double b) {
  return a + (b - a) * uniform01(rng);
}

// Bisection on a bracketing interval [a,b] with f(a)*f(b) <= 0.
// Returns the midpoint once the bracket is narrower than xtol.
inline double bisect(const std::function<double(double)>& f, double a, double b, double xtol) {
  double fa = f(a);
  double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0)) throw Error("bisect: interval does not bracket a root");
  while (b - a > xtol) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if (fm == 0.0) return m;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

// Cubic Hermite value/derivative on [x0,x1] from endpoint values and slopes.
inline double hermite_value(double x, double x0, double x1, double y0, double y1, double d0, double d1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  const double t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * d0 + (-2 * t3 + 3 * t2) * y1 +
         (t3 - t2) * h * d1;
}

inline double hermite_derivative(double x, double x0, double x1, double y0, double y1, double d0,
                                 double d1) {
  const double h = x1 - x0;
  const double t = (x - x0) / h;
  const double t2 = t * t;
  return ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * d0 + (-6 * t2 + 6 * t) * y1 +
          (3 * t2 - 2 * t) * h * d1) /
         h;
}

// Index of the last grid point <= x (grid strictly increasing, x within span).
inline std::size_t locate_segment(const std::vector<double>& grid, double x) {
  if (grid.size() < 2) throw Error("locate_segment: grid too short");
  auto it = std::upper_bound(grid.begin(), grid.end(), x);
  std::size_t i = (it == grid.begin()) ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
  if (i >= grid.size() - 1) i = grid.size() - 2;
  return i;
}

} // namespace ucilab
