#pragma once

// Small statistics helpers shared by the experiment modules: least
// squares polynomial fits, moments, binomial confidence intervals.

#include <Eigen/Dense>

#include <vector>

namespace rplab {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LinearFit fit_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Least-squares polynomial coefficients, constant term first.
Eigen::VectorXd polyfit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int degree);

double mean(const Eigen::VectorXd& v);
double variance(const Eigen::VectorXd& v);  // unbiased

struct BinomialEstimate {
    double p_hat = 0.0;
    double half_width = 0.0;  // normal-approximation CI; rule of three at 0 or n
};

BinomialEstimate binomial_estimate(long successes, long trials, double z = 1.96);

/// Empirical quantile of already sorted data (linear interpolation).
double quantile_sorted(const std::vector<double>& sorted, double q);

}  // namespace rplab
