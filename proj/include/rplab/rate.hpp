#pragma once

// Rate experiments: sup-over-windows one-step defects of the step-N
// scheme against the reference solution on shrinking dyadic windows,
// log-log slope fits, and the growth of the empirical constant under
// dilation of the driver.

#include <string>
#include <vector>

#include "rplab/rough_path.hpp"
#include "rplab/vector_field.hpp"

namespace rplab {

struct RateReport {
    Eigen::VectorXd interval_lengths;
    Eigen::VectorXd errors;  // sup over window starts, one entry per length
    double fitted_slope = 0.0;
    double fitted_intercept = 0.0;
    double theta_target = 0.0;        // (N+1)/p
    double empirical_constant = 0.0;  // sup errors / length^theta
    bool degenerate = false;          // regression refused (all-zero errors)
    std::string note;
};

/// One-step defect sup_s |y_{s,s+l} - I[y_s, N, x_{s,s+l}]| per window
/// length, fitted on the log-log scale.  The grid must carry a fine
/// uniform skeleton; window endpoints align with the skeleton times.
/// Lengths below the round-off floor (error < 1e-12) are dropped.
RateReport davie_rate_experiment(const VectorFieldFamily& V, int N, double p,
                                 const RoughPathGrid& x, const std::vector<double>& lengths,
                                 const Eigen::VectorXd& y0, double ode_tol = 1e-10,
                                 Eigen::Index max_starts = 512);

struct ConstantGrowthReport {
    Eigen::VectorXd scales;         // dilation factors, >= 1
    Eigen::VectorXd hoelder_norms;  // measured driver norm per scale
    Eigen::VectorXd constants;      // empirical C per scale
    Eigen::VectorXd quad_fit;       // ln C vs ln M: c0 + c1 u + c2 u^2
    double cubic_coefficient = 0.0;
    double quadratic_coefficient = 0.0;
    bool cubic_check_ran = false;
    bool at_most_quadratic = true;
    bool monotone = true;
};

/// Empirical constant sup error / l^theta measured while dilating the
/// driver; fits ln C against ln M and checks that the growth stays at
/// most quadratic: the fitted cubic term must not be significantly
/// positive (above 5% of the quadratic one).  Saturating curves pass.
ConstantGrowthReport constant_growth_probe(const VectorFieldFamily& V, int N, double p,
                                           const RoughPathGrid& base,
                                           const std::vector<double>& scale_grid,
                                           const std::vector<double>& lengths,
                                           const Eigen::VectorXd& y0, double ode_tol = 1e-10);

}  // namespace rplab
