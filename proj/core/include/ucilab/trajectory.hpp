#pragma once

#include <string>
#include <vector>

#include "ucilab/field.hpp"
#include "ucilab/numerics.hpp"

namespace ucilab {

struct TrajectoryMeta {
  std::string integrator = "samples";
  double tol = 0.0;          // integrator tolerance actually used
  std::string field = "";    // identifier of the coefficient field
  // Residual certification floor of the stored data. Finite-difference
  // residuals cannot certify below ~sqrt(eps) regardless of integrator
  // accuracy; tolerance-halving is the sharp accuracy check.
  double residual_tol = 1e-3;
};

// A numerically integrated (or analytically sampled) solution u with its
// derivative u' on a strictly increasing grid. Between nodes, u is the cubic
// Hermite interpolant of (u, u'); u' is the Hermite interpolant of (u', u'')
// when u'' samples are present, else a finite-difference fallback.
class Trajectory {
 public:
  Trajectory(std::vector<double> grid, std::vector<double> u, std::vector<double> du,
             TrajectoryMeta meta = {}, std::vector<double> ddu = {});

  std::size_t size() const { return grid_.size(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& u() const { return u_; }
  const std::vector<double>& du() const { return du_; }
  const std::vector<double>& ddu() const { return ddu_; }
  bool has_ddu() const { return !ddu_.empty(); }
  const TrajectoryMeta& meta() const { return meta_; }
  TrajectoryMeta& meta() { return meta_; }

  Interval span() const { return {grid_.front(), grid_.back()}; }

  double eval_u(double x) const;
  double eval_du(double x) const;

  // Builds a trajectory by sampling closed forms on a uniform grid.
  static Trajectory from_function(const std::function<double(double)>& u,
                                  const std::function<double(double)>& du, Interval span, int n,
                                  TrajectoryMeta meta = {});

 private:
  std::vector<double> grid_, u_, du_, ddu_;
  TrajectoryMeta meta_;
};

// Max over interior nodes of |alpha u'' + q u' + V u| / scale, with u''
// differenced from the stored u' samples and scale the sum of the term
// magnitudes. Small (<= meta.residual_tol) for genuine solutions of L u = 0;
// O(1) for data that solves a different equation.
double max_relative_residual(const Trajectory& traj, const CoefficientField1D& field);

} // namespace ucilab
