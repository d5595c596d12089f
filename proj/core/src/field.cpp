#include "ucilab/field.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace ucilab {

namespace {

double get_param(const ParamMap& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

bool has_param(const ParamMap& params, const std::string& key) {
  return params.find(key) != params.end();
}

// Collects params "prefix.0", "prefix.1", ... into a vector, stopping at the
// first missing index.
std::vector<double> indexed_params(const ParamMap& params, const std::string& prefix) {
  std::vector<double> out;
  for (int k = 0;; ++k) {
    auto it = params.find(prefix + "." + std::to_string(k));
    if (it == params.end()) break;
    out.push_back(it->second);
  }
  return out;
}

Interval window_from(const ParamMap& params, Interval fallback) {
  return Interval{get_param(params, "x_lo", fallback.lo), get_param(params, "x_hi", fallback.hi)};
}

} // namespace

CoefficientField1D::CoefficientField1D(Interval window, Fn alpha, Fn drift, Fn potential,
                                       FieldBounds bounds, std::string name)
    : window_(window),
      alpha_(std::move(alpha)),
      drift_(std::move(drift)),
      potential_(std::move(potential)),
      bounds_(bounds),
      name_(std::move(name)) {
  if (!(window_.lo >= 0.0) || !(window_.hi > window_.lo))
    throw ParameterOutOfRange("field window must satisfy 0 <= x_lo < x_hi");
  if (!(bounds_.alpha_inf > 0.0))
    throw NonPositiveAlpha("declared alpha_inf must be positive");
}

void CoefficientField1D::check_bounds(int grid_n) const {
  const auto xs = linspace(window_.lo, window_.hi, std::max(grid_n, 2));
  for (double x : xs) {
    const double a = alpha_(x);
    if (!(a > 0.0)) {
      std::ostringstream msg;
      msg << "alpha(" << x << ") = " << a << " is not positive";
      throw NonPositiveAlpha(msg.str());
    }
    const double tol = 1e-12 * (1.0 + bounds_.alpha_sup + bounds_.q_sup + bounds_.v_sup);
    if (a < bounds_.alpha_inf - tol || a > bounds_.alpha_sup + tol ||
        std::abs(drift_(x)) > bounds_.q_sup + tol || std::abs(potential_(x)) > bounds_.v_sup + tol) {
      std::ostringstream msg;
      msg << "sampled coefficients escape declared bounds at x = " << x;
      throw ParameterOutOfRange(msg.str());
    }
  }
}

SupRatios sup_ratios(const CoefficientField1D& field, int grid_n) {
  if (grid_n < 2) throw Error("sup_ratios: grid_n must be >= 2");
  const auto xs = linspace(field.window().lo, field.window().hi, grid_n);
  SupRatios r;
  for (double x : xs) {
    const double a = field.alpha(x);
    if (!(a > 0.0)) {
      std::ostringstream msg;
      msg << "alpha(" << x << ") <= 0";
      throw NonPositiveAlpha(msg.str());
    }
    r.beta = std::max(r.beta, std::abs(field.drift(x)) / a);
    r.gamma = std::max(r.gamma, std::abs(field.potential(x)) / a);
  }
  return r;
}

namespace {

CoefficientField1D make_constant(const ParamMap& params) {
  const double a = get_param(params, "a", 1.0);
  const double q = get_param(params, "q", 0.0);
  const double v = get_param(params, "v", 0.0);
  if (!(a > 0.0)) throw ParameterOutOfRange("constant: a must be positive");
  FieldBounds b{a, a, std::abs(q), std::abs(v)};
  return CoefficientField1D(
      window_from(params, {0.0, 10.0}), [a](double) { return a; }, [q](double) { return q; },
      [v](double) { return v; }, b, "constant");
}

CoefficientField1D make_piecewise_constant(const ParamMap& params) {
  const auto alphas = indexed_params(params, "alpha");
  const auto qs = indexed_params(params, "q");
  const auto vs = indexed_params(params, "v");
  const auto breaks = indexed_params(params, "breaks");
  const std::size_t n = alphas.size();
  if (n == 0 || qs.size() != n || vs.size() != n || breaks.size() + 1 != n)
    throw ParameterOutOfRange(
        "piecewise_constant: need alpha.k, q.k, v.k for k = 0..n-1 and breaks.k for k = 0..n-2");
  if (!std::is_sorted(breaks.begin(), breaks.end()))
    throw ParameterOutOfRange("piecewise_constant: breakpoints must be increasing");
  FieldBounds b;
  b.alpha_inf = *std::min_element(alphas.begin(), alphas.end());
  b.alpha_sup = *std::max_element(alphas.begin(), alphas.end());
  if (!(b.alpha_inf > 0.0)) throw ParameterOutOfRange("piecewise_constant: alpha must be positive");
  for (double q : qs) b.q_sup = std::max(b.q_sup, std::abs(q));
  for (double v : vs) b.v_sup = std::max(b.v_sup, std::abs(v));

  auto segment = [breaks](double x) {
    return static_cast<std::size_t>(std::upper_bound(breaks.begin(), breaks.end(), x) -
                                    breaks.begin());
  };
  return CoefficientField1D(
      window_from(params, {0.0, 10.0}), [alphas, segment](double x) { return alphas[segment(x)]; },
      [qs, segment](double x) { return qs[segment(x)]; },
      [vs, segment](double x) { return vs[segment(x)]; }, b, "piecewise_constant");
}

// Finite random Fourier sums. The sup bound of  sum_k a_k cos(w_k x + p_k)
// is sum_k |a_k|, so the declared bounds are exact analytic statements about
// the profile, independent of any sampling grid.
struct FourierSum {
  std::vector<double> amp, freq, phase;
  double offset = 0.0;

  double operator()(double x) const {
    double s = offset;
    for (std::size_t k = 0; k < amp.size(); ++k) s += amp[k] * std::cos(freq[k] * x + phase[k]);
    return s;
  }

  double abs_amp_sum() const {
    double s = 0.0;
    for (double a : amp) s += std::abs(a);
    return s;
  }
};

FourierSum draw_fourier(std::mt19937_64& rng, int terms, double amp_total, double freq_max) {
  FourierSum f;
  f.amp.resize(static_cast<std::size_t>(terms));
  f.freq.resize(static_cast<std::size_t>(terms));
  f.phase.resize(static_cast<std::size_t>(terms));
  double raw_sum = 0.0;
  for (int k = 0; k < terms; ++k) {
    f.amp[static_cast<std::size_t>(k)] = uniform(rng, -1.0, 1.0);
    f.freq[static_cast<std::size_t>(k)] = uniform(rng, 0.2, freq_max);
    f.phase[static_cast<std::size_t>(k)] = uniform(rng, 0.0, 6.283185307179586);
    raw_sum += std::abs(f.amp[static_cast<std::size_t>(k)]);
  }
  if (raw_sum > 0.0)
    for (auto& a : f.amp) a *= amp_total / raw_sum;
  return f;
}

CoefficientField1D make_smooth_random(const ParamMap& params, std::uint64_t seed) {
  const int terms = static_cast<int>(get_param(params, "terms", 4.0));
  const double alpha_base = get_param(params, "alpha_base", 1.0);
  const double alpha_amp = get_param(params, "alpha_amp", 0.3);
  const double q_amp = get_param(params, "q_amp", 1.0);
  const double v_amp = get_param(params, "v_amp", 1.0);
  const double freq_max = get_param(params, "freq_max", 3.0);
  if (terms < 1 || terms > 64) throw ParameterOutOfRange("smooth_random: terms must be in [1,64]");
  if (!(alpha_base - alpha_amp > 0.0))
    throw ParameterOutOfRange("smooth_random: alpha_base - alpha_amp must be positive");
  if (alpha_amp < 0.0 || q_amp < 0.0 || v_amp < 0.0 || !(freq_max > 0.2))
    throw ParameterOutOfRange("smooth_random: amplitudes must be >= 0 and freq_max > 0.2");

  std::mt19937_64 rng(seed);
  FourierSum fa = draw_fourier(rng, terms, alpha_amp, freq_max);
  fa.offset = alpha_base;
  const FourierSum fq = draw_fourier(rng, terms, q_amp, freq_max);
  const FourierSum fv = draw_fourier(rng, terms, v_amp, freq_max);

  FieldBounds b;
  b.alpha_inf = alpha_base - fa.abs_amp_sum();
  b.alpha_sup = alpha_base + fa.abs_amp_sum();
  b.q_sup = fq.abs_amp_sum();
  b.v_sup = fv.abs_amp_sum();
  return CoefficientField1D(window_from(params, {0.0, 30.0}), fa, fq, fv, b, "smooth_random");
}

CoefficientField1D make_radial_bessel_like(const ParamMap& params) {
  const double n_dim = get_param(params, "n_dim", 3.0);
  if (!(n_dim >= 1.0)) throw ParameterOutOfRange("radial_bessel_like: n_dim must be >= 1");
  const Interval w = window_from(params, {1.0, 10.0});
  if (!(w.lo > 0.0)) throw ParameterOutOfRange("radial_bessel_like: window must exclude r = 0");
  FieldBounds b{1.0, 1.0, (n_dim - 1.0) / w.lo, 1.0};
  return CoefficientField1D(
      w, [](double) { return 1.0; }, [n_dim](double r) { return (n_dim - 1.0) / r; },
      [](double) { return -1.0; }, b, "radial_bessel_like");
}

} // namespace

CoefficientField1D make_profile(const std::string& name, const ParamMap& params,
                                std::uint64_t seed) {
  if (name == "constant") return make_constant(params);
  if (name == "piecewise_constant") return make_piecewise_constant(params);
  if (name == "smooth_random") return make_smooth_random(params, seed);
  if (name == "radial_bessel_like") return make_radial_bessel_like(params);
  throw UnknownProfile("unknown field profile '" + name + "'");
}

std::vector<std::string> profile_names() {
  return {"constant", "piecewise_constant", "smooth_random", "radial_bessel_like"};
}

CoefficientField1D constant_field(double a, double q, double v, Interval window) {
  ParamMap p{{"a", a}, {"q", q}, {"v", v}, {"x_lo", window.lo}, {"x_hi", window.hi}};
  return make_profile("constant", p);
}

} // namespace ucilab
