#pragma once

// Reference solutions of the controlled ODE dy = sum_i V_i(y) dx^i along
// piecewise-linear drivers.  Within a segment the equation is autonomous
// in the segment direction; an adaptive embedded Runge-Kutta pair
// integrates it to a local tolerance, landing exactly on requested
// output times.

#include <string>
#include <vector>

#include "rplab/path.hpp"
#include "rplab/vector_field.hpp"

namespace rplab {

struct Trajectory {
    Eigen::VectorXd times;
    Eigen::MatrixXd states;  // e x times.size()
    std::string scheme;
    std::vector<std::string> warnings;

    [[nodiscard]] Eigen::VectorXd state_at(double t) const;  // linear interpolation
};

/// Integrates along x over its whole interval; outputs at the path
/// breakpoints, or at `output_times` when given (sorted, inside the
/// interval).  Throws on step-size underflow.
Trajectory ode_solve_reference(const VectorFieldFamily& V, const Eigen::VectorXd& y0,
                               const PiecewiseLinearPath& x, double tol,
                               const Eigen::VectorXd* output_times = nullptr);

/// Endpoint only; used by the per-cell geodesic stepper.
Eigen::VectorXd ode_endpoint(const VectorFieldFamily& V, const Eigen::VectorXd& y0,
                             const PiecewiseLinearPath& x, double tol);

}  // namespace rplab
