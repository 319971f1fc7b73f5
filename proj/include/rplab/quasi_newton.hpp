#pragma once

// Limited-memory quasi-Newton minimizer over R^n with central-difference
// gradients and Armijo backtracking.  Used by the length-minimization
// layer; objectives there are cheap, smooth away from zero-length
// segments, and have a few hundred variables at most.

#include <Eigen/Dense>

#include <functional>

namespace rplab {

struct MinimizeOptions {
    int max_iterations = 150;
    int history = 10;
    double gradient_tol = 1e-9;   // stop on inf-norm of the FD gradient
    double step_tol = 1e-13;      // stop on relative step size
    double fd_step = 6.0e-6;      // central-difference step scale
};

struct MinimizeResult {
    Eigen::VectorXd x;
    double value = 0.0;
    int iterations = 0;
    bool converged = false;
};

using Objective = std::function<double(const Eigen::VectorXd&)>;

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double step);

MinimizeResult minimize_fd(const Objective& f, Eigen::VectorXd x0,
                           const MinimizeOptions& opts = {});

}  // namespace rplab
