#include "ucilab/harmonics.hpp"

#include <cmath>
#include <sstream>

namespace ucilab {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration on P_n.
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
  x.resize(static_cast<std::size_t>(n));
  w.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    double z = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[static_cast<std::size_t>(i)] = z;
    w[static_cast<std::size_t>(i)] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

// Associated Legendre P_l^m (Condon-Shortley phase) via the standard stable
// recurrences; fine in double for the desk-scale bands used here.
double assoc_legendre(int l, int m, double x) {
  double pmm = 1.0;
  if (m > 0) {
    const double somx2 = std::sqrt((1.0 - x) * (1.0 + x));
    double fact = 1.0;
    for (int i = 0; i < m; ++i) {
      pmm *= -fact * somx2;
      fact += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmmp1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmmp1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = (x * (2.0 * ll - 1.0) * pmmp1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmmp1;
    pmmp1 = pll;
  }
  return pll;
}

double factorial_ratio(int l, int m) {
  // (l - m)! / (l + m)!
  double r = 1.0;
  for (int k = l - m + 1; k <= l + m; ++k) r /= k;
  return r;
}

} // namespace

AngularQuadrature AngularQuadrature::make(int n_dim, int band) {
  if (n_dim != 2 && n_dim != 3) throw Error("AngularQuadrature: n_dim must be 2 or 3");
  if (band < 0) throw Error("AngularQuadrature: band must be >= 0");
  AngularQuadrature q;
  q.n_dim_ = n_dim;
  q.band_ = band;
  const int n_az = 4 * band + 1;
  if (n_dim == 2) {
    q.nodes_.resize(static_cast<std::size_t>(n_az));
    for (int k = 0; k < n_az; ++k)
      q.nodes_[static_cast<std::size_t>(k)] = {2.0 * kPi * k / n_az, 0.0, 2.0 * kPi / n_az};
  } else {
    std::vector<double> gx, gw;
    gauss_legendre(band + 2, gx, gw);
    q.nodes_.reserve(gx.size() * static_cast<std::size_t>(n_az));
    for (std::size_t i = 0; i < gx.size(); ++i) {
      const double theta = std::acos(gx[i]);
      for (int k = 0; k < n_az; ++k)
        q.nodes_.push_back({theta, 2.0 * kPi * k / n_az, gw[i] * 2.0 * kPi / n_az});
    }
  }
  return q;
}

double AngularQuadrature::sphere_area() const { return n_dim_ == 2 ? 2.0 * kPi : 4.0 * kPi; }

std::vector<SphericalMode> harmonic_basis(const AngularQuadrature& quad, int band) {
  if (band > quad.band())
    throw QuadratureTooCoarse("harmonic_basis: quadrature built for a smaller band");
  std::vector<SphericalMode> modes;
  int j = 0;
  if (quad.n_dim() == 2) {
    const double c0 = 1.0 / std::sqrt(2.0 * kPi);
    const double c1 = 1.0 / std::sqrt(kPi);
    for (int l = 0; l <= band; ++l) {
      const int m_hi = (l == 0) ? 0 : 1;
      for (int sgn = 0; sgn <= m_hi; ++sgn) {
        SphericalMode m;
        m.j = ++j;
        m.degree = l;
        m.order = (sgn == 0) ? l : -l;
        m.lambda = static_cast<double>(l) * l;
        m.phi.resize(quad.size());
        for (std::size_t k = 0; k < quad.size(); ++k) {
          const double th = quad.nodes()[k].theta;
          m.phi[k] = (l == 0) ? c0 : c1 * (sgn == 0 ? std::cos(l * th) : std::sin(l * th));
        }
        modes.push_back(std::move(m));
      }
    }
  } else {
    for (int l = 0; l <= band; ++l) {
      for (int order = -l; order <= l; ++order) {
        SphericalMode m;
        m.j = ++j;
        m.degree = l;
        m.order = order;
        m.lambda = static_cast<double>(l) * (l + 1);
        m.phi.resize(quad.size());
        const int ma = std::abs(order);
        const double norm =
            std::sqrt((2.0 * l + 1.0) / (4.0 * kPi) * factorial_ratio(l, ma)) *
            (order != 0 ? std::sqrt(2.0) : 1.0);
        for (std::size_t k = 0; k < quad.size(); ++k) {
          const auto& node = quad.nodes()[k];
          const double p = assoc_legendre(l, ma, std::cos(node.theta));
          double az = 1.0;
          if (order > 0) az = std::cos(ma * node.azimuth);
          if (order < 0) az = std::sin(ma * node.azimuth);
          m.phi[k] = norm * p * az;
        }
        modes.push_back(std::move(m));
      }
    }
  }
  return modes;
}

SphericalModeSet decompose(const std::vector<std::vector<double>>& u_samples,
                           const std::vector<double>& radial_grid, const AngularQuadrature& quad,
                           int band) {
  if (band > quad.band())
    throw QuadratureTooCoarse("decompose: quadrature built for band " +
                              std::to_string(quad.band()) + ", requested " + std::to_string(band));
  if (u_samples.size() != radial_grid.size())
    throw Error("decompose: u_samples and radial_grid size mismatch");
  for (const auto& row : u_samples)
    if (row.size() != quad.size()) throw Error("decompose: sample row does not match quadrature");

  SphericalModeSet set;
  set.n_dim = quad.n_dim();
  set.band = band;
  set.quad = quad;
  set.modes = harmonic_basis(quad, band);
  set.radial_grid = radial_grid;
  set.u_modes.assign(set.modes.size(), std::vector<double>(radial_grid.size(), 0.0));
  set.truncation_energy.assign(radial_grid.size(), 0.0);

  for (std::size_t ir = 0; ir < radial_grid.size(); ++ir) {
    double norm2 = 0.0;
    for (std::size_t k = 0; k < quad.size(); ++k)
      norm2 += quad.nodes()[k].weight * u_samples[ir][k] * u_samples[ir][k];
    double retained = 0.0;
    for (std::size_t jm = 0; jm < set.modes.size(); ++jm) {
      double c = 0.0;
      for (std::size_t k = 0; k < quad.size(); ++k)
        c += quad.nodes()[k].weight * u_samples[ir][k] * set.modes[jm].phi[k];
      set.u_modes[jm][ir] = c;
      retained += c * c;
    }
    set.truncation_energy[ir] = std::max(0.0, norm2 - retained);
  }
  return set;
}

std::vector<std::vector<double>> reconstruct(const SphericalModeSet& set) {
  std::vector<std::vector<double>> u(set.radial_grid.size(),
                                     std::vector<double>(set.quad.size(), 0.0));
  for (std::size_t ir = 0; ir < set.radial_grid.size(); ++ir)
    for (std::size_t jm = 0; jm < set.modes.size(); ++jm) {
      const double c = set.u_modes[jm][ir];
      if (c == 0.0) continue;
      for (std::size_t k = 0; k < set.quad.size(); ++k) u[ir][k] += c * set.modes[jm].phi[k];
    }
  return u;
}

CoefficientField1D mode_field(int n_dim, double lambda_j, const CoefficientField1D& radial_part) {
  const Interval w = radial_part.window();
  if (!(w.lo > 0.0)) throw WindowContainsOrigin("mode_field: radial window must exclude r = 0");
  FieldBounds b;
  b.alpha_inf = 1.0;
  b.alpha_sup = 1.0;
  b.q_sup = radial_part.bounds().q_sup + (n_dim - 1.0) / w.lo;
  b.v_sup = radial_part.bounds().v_sup + lambda_j / (w.lo * w.lo);
  auto q = [&radial_part, n_dim](double r) { return radial_part.drift(r) + (n_dim - 1.0) / r; };
  auto v = [&radial_part, lambda_j](double r) {
    return radial_part.potential(r) - lambda_j / (r * r);
  };
  std::ostringstream name;
  name << "mode(lambda=" << lambda_j << ",N=" << n_dim << ",base=" << radial_part.name() << ")";
  return CoefficientField1D(
      w, [](double) { return 1.0; }, q, v, b, name.str());
}

RadialUciReport verify_radial_uci(const SphericalModeSet& set, double kappa,
                                  const CoefficientField1D& radial_part, double x0,
                                  double tol_thm) {
  RadialUciReport rep;
  rep.kappa = kappa;
  const TailThresholds tt =
      threshold_tail(radial_part, default_tail_start(radial_part.window()));
  rep.tail_threshold = tt.kappa_limsup;
  rep.hypothesis_met = kappa > tt.kappa_limsup;

  double mode_scale = 0.0;
  for (const auto& um : set.u_modes)
    for (double v : um) mode_scale = std::max(mode_scale, std::abs(v));

  bool any_nontrivial = false;
  bool all_fail = true;
  for (std::size_t jm = 0; jm < set.modes.size(); ++jm) {
    ModeUciEntry e;
    e.j = set.modes[jm].j;
    e.degree = set.modes[jm].degree;
    e.lambda = set.modes[jm].lambda;
    double sup = 0.0;
    for (double v : set.u_modes[jm]) sup = std::max(sup, std::abs(v));
    e.trivial = sup <= 1e-10 * std::max(mode_scale, 1e-300);
    if (!e.trivial) {
      any_nontrivial = true;
      const auto& r = set.radial_grid;
      const auto& um = set.u_modes[jm];
      std::vector<double> du(r.size());
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i == 0)
          du[i] = (um[1] - um[0]) / (r[1] - r[0]);
        else if (i + 1 == r.size())
          du[i] = (um[i] - um[i - 1]) / (r[i] - r[i - 1]);
        else
          du[i] = (um[i + 1] - um[i - 1]) / (r[i + 1] - r[i - 1]);
      }
      TrajectoryMeta meta{"samples+fd", 0.0, "mode_" + std::to_string(e.j), 5e-2};
      Trajectory traj(r, um, du, meta);
      const CoefficientField1D fj = mode_field(set.n_dim, e.lambda, radial_part);
      e.report = verify_uci(fj, traj, x0, tol_thm);
      if (e.report.pass) all_fail = false;
    }
    rep.entries.push_back(std::move(e));
  }
  rep.flagged = rep.hypothesis_met && any_nontrivial && all_fail;
  return rep;
}

RadializedField radialize(int n_dim, int axis, const std::function<double(double, int)>& A_diag,
                          const std::function<double(double)>& q_axis,
                          const std::function<double(double)>& V, Interval window, double A_sup,
                          double A_inf, double q_sup, double v_sup) {
  if (!(window.lo > 0.0)) throw WindowContainsOrigin("radialize: ray window must exclude r = 0");
  if (axis < 0 || axis >= n_dim) throw Error("radialize: axis out of range");
  if (!(A_inf > 0.0)) throw NonPositiveAlpha("radialize: A_inf must be positive");

  auto alpha = [A_diag, axis](double r) { return A_diag(r, axis); };
  auto drift = [A_diag, q_axis, axis, n_dim](double r) {
    double trace = 0.0;
    for (int i = 0; i < n_dim; ++i) trace += A_diag(r, i);
    return q_axis(r) + (trace - A_diag(r, axis)) / r;
  };
  FieldBounds b;
  b.alpha_inf = A_inf;
  b.alpha_sup = A_sup;
  b.q_sup = q_sup + (n_dim - 1.0) * A_sup / window.lo;
  b.v_sup = v_sup;
  RadializedField out{CoefficientField1D(window, alpha, drift, V, b, "radialized"),
                      (n_dim - 1.0) * A_sup / (2.0 * A_inf)};
  return out;
}

} // namespace ucilab
