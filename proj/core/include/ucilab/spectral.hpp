#pragma once

#include <vector>

#include "ucilab/field.hpp"
#include "ucilab/trajectory.hpp"

namespace ucilab {

struct DirichletEigen {
  double lambda = 0.0;
  std::vector<double> x;    // mesh including the Dirichlet endpoints
  std::vector<double> phi;  // eigenfunction, max-normalized to 1, zero at ends
  int mesh_n = 0;           // subinterval count actually used (Peclet-refined)
  double residual = 0.0;    // || T phi - lambda phi ||_inf
};

// Principal Dirichlet eigenvalue of -(alpha u'' + q u' + V u) = lambda u on
// [a,b]: second-order central differences on a uniform mesh, inverse power
// iteration on the (pivoted) tridiagonal LU. The mesh is refined until the
// cell Peclet number |q| h / (2 alpha) stays below 1.
DirichletEigen dirichlet_lambda1(const CoefficientField1D& field, Interval ab, int mesh_n);

struct EigenEstimate {
  std::vector<double> radii;
  std::vector<double> lambdas;      // nonincreasing in the radius
  double lambda_inf = 0.0;          // 1/L^2 Richardson extrapolation of the tail
  double err_est = 0.0;
  DirichletEigen largest;           // eigenpair on the largest domain
  bool lambda_nonneg = false;       // false flags "sign hypothesis not applicable"
};

// Expanding-domain limit of the Dirichlet principal eigenvalue: solves on
// [x_lo, x_lo + L] for each L in radii (mesh_density nodes per unit length).
EigenEstimate generalized_lambda1(const CoefficientField1D& field, std::vector<double> radii,
                                  double mesh_density);

// True iff the sampled u > 0 satisfies  L u <= +1e-8 * scale  at every
// interior node (discrete central differences on the trajectory grid), i.e.
// u is numerically a supersolution. lambda >= 0 is the caller's certificate
// that the comparison is meaningful; it is checked, not used in the residual.
bool supersolution_check(const CoefficientField1D& field, const Trajectory& traj, double lambda);

} // namespace ucilab
