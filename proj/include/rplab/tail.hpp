#pragma once

// Monte Carlo tail machinery: Gauss-tail diagnostics of norm samples,
// exceedance surfaces for the step-N one-step remainder under the
// Brownian normalization R t^{(N+1)/2} (the 1/p-Hoelder normalization is
// reported alongside), and moment curves for the dyadic approximations.

#include <cstdint>
#include <vector>

#include "rplab/brownian.hpp"
#include "rplab/stats.hpp"
#include "rplab/vector_field.hpp"

namespace rplab {

struct GaussTailReport {
    int samples = 0;
    bool degenerate = false;        // point mass (deterministic input)
    double alpha_hat = 0.0;         // -slope of ln P(M > m) vs m^2
    double quad_coefficient = 0.0;  // m^2 coefficient of ln P vs m (Gauss-compatible <= 0)
    double moment_growth_slope = 0.0;  // ln E[M^q]^{1/q} vs ln q
    Eigen::VectorXd thresholds;
    Eigen::VectorXd log_survival;
    Eigen::VectorXd q_values;
    Eigen::VectorXd moment_norms;
    bool pass = false;
};

/// Fits the empirical survival function on the m^2 scale and checks the
/// moment sequence E[M^q]^{1/q} grows no faster than sqrt(q) (log-log
/// slope <= 0.6).  Needs at least 1000 samples.
GaussTailReport gauss_tail_probe(const std::vector<double>& samples, int q_max);

struct TailReport {
    Eigen::VectorXd t_grid;
    Eigen::VectorXd r_grid;
    Eigen::MatrixXd counts;         // rows t, cols R
    Eigen::MatrixXd probabilities;  // normalization R t^{(N+1)/2}
    Eigen::MatrixXd ci_half_widths;
    Eigen::MatrixXd probabilities_hoelder;  // normalization R t^{(N+1)/p}
    int samples = 0;
    double castell_exponent = 0.0;  // 2/(N+1)
    Eigen::VectorXd envelope_c;     // per t: fitted c in c exp(-R^a / c)
    bool monotone_pass = false;
    bool envelope_pass = false;
    bool collapse_pass = false;
    double max_collapse_gap = 0.0;
};

/// Empirical P(sup_{s <= t} |y_{0,s} - I[y_0, N, x_{0,s}]| > R t^{(N+1)/2})
/// over EBM samples.  Asserts monotone decay in R (within confidence),
/// domination of the largest-R point by the Castell-exponent envelope
/// fitted on the smaller R, and near-collapse of the curves across t.
TailReport azencott_tail_experiment(const VectorFieldFamily& V, int N, double p,
                                    const Eigen::VectorXd& t_grid, const Eigen::VectorXd& r_grid,
                                    int samples, std::uint64_t seed, const Eigen::VectorXd& y0,
                                    int fine_level = 10, double ode_tol = 1e-8, int workers = 0);

struct LqReport {
    std::vector<int> n_levels;
    std::vector<double> q_list;
    Eigen::MatrixXd moment_norms;  // rows n, cols q: E[Z_n^q]^{1/q}
    Eigen::MatrixXd ci_half;       // delta-method half widths
    int samples = 0;
    bool monotone_pass = false;
    std::vector<double> sup_holder_norms;  // per sample: sup_n of the lifted 1/p-Hoelder norms
};

/// Z_n = 1/p-Hoelder distance (on the finest common dyadic grid) between
/// the solution driven by the level-n approximation and the one driven
/// by the finest level; moments must decrease in n within one
/// confidence width.
LqReport lq_convergence_experiment(const VectorFieldFamily& V, double p,
                                   const std::vector<double>& q_list,
                                   const std::vector<int>& n_list, int samples,
                                   std::uint64_t seed, const Eigen::VectorXd& y0,
                                   int fine_level = 10, double ode_tol = 1e-8, int workers = 0);

}  // namespace rplab
