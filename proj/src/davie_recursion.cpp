#include "rplab/davie_recursion.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "rplab/stats.hpp"

namespace rplab {

DavieRecursion::DavieRecursion(double p_, int N_, double b_) : p(p_), N(N_), b(b_) {
    if (p < 1.0) throw std::invalid_argument("DavieRecursion: need p >= 1");
    if (b < 0.0) throw std::invalid_argument("DavieRecursion: need b >= 0");
    a = std::pow(2.0, 1.0 - static_cast<double>(N + 1) / p);
    if (!(a > 0.0 && a < 1.0)) {
        throw std::invalid_argument("DavieRecursion: a in (0,1) requires N > p - 1");
    }
}

std::pair<double, double> lambda_gamma(const DavieRecursion& rec, int k, int n) {
    if (k < 0 || n < 0) throw std::invalid_argument("lambda_gamma: need k, n >= 0");
    const int top = std::max(k, n);
    double lambda = 1.0;  // Lambda(0,b) = 1
    double gamma = 0.0;
    double lambda_k = (k == 0) ? 1.0 : 0.0;
    for (int j = 0; j <= top; ++j) {
        if (j <= n) gamma += lambda;
        if (j == k) lambda_k = lambda;
        lambda *= rec.a * (1.0 + rec.b * std::pow(2.0, -rec.p * j));
    }
    return {lambda_k, gamma};
}

GammaLimit gamma_limit(const DavieRecursion& rec) {
    GammaLimit out;
    double lambda = 1.0;
    double gamma = 0.0;
    int k = 0;
    while (k < 200000) {
        gamma += lambda;
        const double ratio = rec.a * (1.0 + rec.b * std::pow(2.0, -rec.p * k));
        lambda *= ratio;
        ++k;
        // once the term ratio is below 1 the tail is geometrically
        // dominated; stop when it cannot move the sum at 1e-15
        if (ratio < 1.0 && lambda / (1.0 - rec.a) < 1e-15 * gamma) break;
    }
    out.gamma_inf = gamma;
    out.log_gamma_inf = std::log(gamma);
    out.terms = k;

    const double pole = 1.0 - std::pow(2.0, -rec.p);
    out.log_naive_bound = -std::log(1.0 - rec.a) + rec.b / pole;
    const double lb = std::log(rec.b);
    out.log_refined_bound =
        std::numbers::e / pole - std::log(1.0 - rec.a) + 1.5 * lb * lb;
    out.refined_holds = out.log_gamma_inf <= out.log_refined_bound;
    out.refined_beats_naive = out.log_refined_bound < out.log_naive_bound;
    return out;
}

GammaBoundReport gamma_limit_bound_check(double p, int N, const std::vector<double>& b_grid) {
    for (double b : b_grid) {
        if (b < std::numbers::e) {
            throw std::invalid_argument("gamma_limit_bound_check: bound regime needs b >= e");
        }
    }
    GammaBoundReport rep;
    const auto n = static_cast<Eigen::Index>(b_grid.size());
    rep.b_grid.resize(n);
    rep.log_gamma.resize(n);
    rep.log_refined.resize(n);
    rep.log_naive.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const DavieRecursion rec(p, N, b_grid[static_cast<std::size_t>(i)]);
        const GammaLimit lim = gamma_limit(rec);
        rep.b_grid(i) = rec.b;
        rep.log_gamma(i) = lim.log_gamma_inf;
        rep.log_refined(i) = lim.log_refined_bound;
        rep.log_naive(i) = lim.log_naive_bound;
        if (!lim.refined_holds) rep.bound_holds = false;
    }
    if (n >= 3) {
        Eigen::VectorXd lb = rep.b_grid.array().log();
        rep.quadratic_coefficient = polyfit(lb, rep.log_gamma, 2)(2);
        rep.quadratic_ok =
            rep.quadratic_coefficient > 0.0 && rep.quadratic_coefficient <= 1.6;
    }
    return rep;
}

}  // namespace rplab
