#pragma once

// One-step schemes on a rough-path grid: the step-N scheme driven by the
// group increments, and the geodesic scheme that replaces each cell by a
// short path with the same step-N signature and integrates the ODE along
// it.

#include "rplab/euler.hpp"
#include "rplab/geodesic.hpp"
#include "rplab/ode.hpp"
#include "rplab/rough_path.hpp"

namespace rplab {

/// y_{k+1} = y_k + I[y_k, N, x_{t_k, t_{k+1}}] on the grid times.
Trajectory euler_scheme_solve(const VectorFieldFamily& V, int N, const RoughPathGrid& x,
                              const Eigen::VectorXd& y0);

/// y_{k+1} = endpoint of the ODE along the cell's geodesic path started
/// at y_k.  Cells that missed their length budget are attached to the
/// trajectory as warnings.
Trajectory geodesic_scheme_solve(const VectorFieldFamily& V, int N, const RoughPathGrid& x,
                                 const GeodesicFamilyConfig& cfg, const Eigen::VectorXd& y0,
                                 double ode_tol = 1e-10);

/// max over cells of the one-step disagreement between the two schemes
/// started from the shared per-cell state of the step-N trajectory.
double paired_one_step_defect(const VectorFieldFamily& V, int N, const RoughPathGrid& x,
                              const GeodesicFamilyConfig& cfg, const Eigen::VectorXd& y0,
                              double ode_tol = 1e-10);

}  // namespace rplab
