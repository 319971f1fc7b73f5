#pragma once

// Growth machinery for the constant in the window-halving iteration:
// Lambda(k,b) = a^k prod_{j=0}^{k-1} (1 + b 2^{-p j}) with
// a = 2^{1-(N+1)/p} in (0,1), Gamma(n,b) = partial sums, and two upper
// bounds for the limit: the naive exp(b/(1-2^{-p}))/(1-a) and the
// refined exp(e/(1-2^{-p}))/(1-a) * exp(1.5 (ln b)^2) valid for b >= e.

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace rplab {

struct DavieRecursion {
    double p = 2.0;
    int N = 2;
    double b = 0.0;
    double a = 0.0;  // 2^{1-(N+1)/p}

    DavieRecursion(double p_, int N_, double b_);
};

/// Lambda(k, b) and Gamma(n, b) as exact finite products/sums.
std::pair<double, double> lambda_gamma(const DavieRecursion& rec, int k, int n);

struct GammaLimit {
    double gamma_inf = 0.0;
    double log_gamma_inf = 0.0;
    double log_refined_bound = 0.0;  // requires b >= e
    double log_naive_bound = 0.0;
    int terms = 0;
    bool refined_holds = false;
    bool refined_beats_naive = false;
};

/// Sums Gamma to convergence (tail below 1e-15 of the partial sum) and
/// compares against both bounds in log space.
GammaLimit gamma_limit(const DavieRecursion& rec);

struct GammaBoundReport {
    Eigen::VectorXd b_grid;
    Eigen::VectorXd log_gamma;
    Eigen::VectorXd log_refined;
    Eigen::VectorXd log_naive;
    double quadratic_coefficient = 0.0;  // of log Gamma_inf vs ln b
    bool bound_holds = true;             // refined bound on the whole grid
    bool quadratic_ok = true;            // positive and <= 1.6
};

/// Runs gamma_limit over a grid of b >= e values and fits the growth of
/// log Gamma_inf as a quadratic in ln b.
GammaBoundReport gamma_limit_bound_check(double p, int N, const std::vector<double>& b_grid);

}  // namespace rplab
