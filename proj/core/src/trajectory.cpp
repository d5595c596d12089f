#include "ucilab/trajectory.hpp"

#include <algorithm>
#include <cmath>

namespace ucilab {

Trajectory::Trajectory(std::vector<double> grid, std::vector<double> u, std::vector<double> du,
                       TrajectoryMeta meta, std::vector<double> ddu)
    : grid_(std::move(grid)), u_(std::move(u)), du_(std::move(du)), ddu_(std::move(ddu)),
      meta_(std::move(meta)) {
  if (grid_.size() < 2 || u_.size() != grid_.size() || du_.size() != grid_.size())
    throw Error("Trajectory: grid, u, du must have equal length >= 2");
  if (!ddu_.empty() && ddu_.size() != grid_.size())
    throw Error("Trajectory: ddu length mismatch");
  for (std::size_t i = 0; i + 1 < grid_.size(); ++i)
    if (!(grid_[i] < grid_[i + 1])) throw Error("Trajectory: grid must be strictly increasing");
  for (std::size_t i = 0; i < grid_.size(); ++i)
    if (!std::isfinite(u_[i]) || !std::isfinite(du_[i]))
      throw Error("Trajectory: non-finite sample");
}

double Trajectory::eval_u(double x) const {
  if (x <= grid_.front()) return u_.front();
  if (x >= grid_.back()) return u_.back();
  const std::size_t i = locate_segment(grid_, x);
  return hermite_value(x, grid_[i], grid_[i + 1], u_[i], u_[i + 1], du_[i], du_[i + 1]);
}

double Trajectory::eval_du(double x) const {
  if (x <= grid_.front()) return du_.front();
  if (x >= grid_.back()) return du_.back();
  const std::size_t i = locate_segment(grid_, x);
  if (has_ddu())
    return hermite_value(x, grid_[i], grid_[i + 1], du_[i], du_[i + 1], ddu_[i], ddu_[i + 1]);
  return hermite_derivative(x, grid_[i], grid_[i + 1], u_[i], u_[i + 1], du_[i], du_[i + 1]);
}

Trajectory Trajectory::from_function(const std::function<double(double)>& u,
                                     const std::function<double(double)>& du, Interval span, int n,
                                     TrajectoryMeta meta) {
  auto xs = linspace(span.lo, span.hi, n);
  std::vector<double> us(xs.size()), dus(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    us[i] = u(xs[i]);
    dus[i] = du(xs[i]);
  }
  return Trajectory(std::move(xs), std::move(us), std::move(dus), std::move(meta));
}

double max_relative_residual(const Trajectory& traj, const CoefficientField1D& field) {
  const auto& x = traj.grid();
  const auto& u = traj.u();
  const auto& du = traj.du();
  double u_sup = 0.0, du_sup = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    u_sup = std::max(u_sup, std::abs(u[i]));
    du_sup = std::max(du_sup, std::abs(du[i]));
  }
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < x.size(); ++i) {
    const double hm = x[i] - x[i - 1];
    const double hp = x[i + 1] - x[i];
    // non-uniform 3-point first derivative of u' = second derivative of u
    const double ddu = (du[i + 1] * hm * hm - du[i - 1] * hp * hp + du[i] * (hp * hp - hm * hm)) /
                       (hm * hp * (hm + hp));
    const double a = field.alpha(x[i]);
    const double q = field.drift(x[i]);
    const double v = field.potential(x[i]);
    const double res = std::abs(a * ddu + q * du[i] + v * u[i]);
    const double scale = std::abs(a * ddu) + std::abs(q * du[i]) + std::abs(v * u[i]) +
                         a * (u_sup + du_sup) * 1e-6;
    if (scale > 0.0) worst = std::max(worst, res / scale);
  }
  return worst;
}

} // namespace ucilab
