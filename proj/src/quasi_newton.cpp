#include "rplab/quasi_newton.hpp"

#include <cmath>
#include <deque>

namespace rplab {

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double step) {
    Eigen::VectorXd g(x.size());
    Eigen::VectorXd probe = x;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double h = step * (1.0 + std::abs(x(i)));
        const double xi = x(i);
        probe(i) = xi + h;
        const double fp = f(probe);
        probe(i) = xi - h;
        const double fm = f(probe);
        probe(i) = xi;
        g(i) = (fp - fm) / (2.0 * h);
    }
    return g;
}

MinimizeResult minimize_fd(const Objective& f, Eigen::VectorXd x0, const MinimizeOptions& opts) {
    const Eigen::Index n = x0.size();
    MinimizeResult res;
    res.x = std::move(x0);
    res.value = f(res.x);

    Eigen::VectorXd grad = fd_gradient(f, res.x, opts.fd_step);
    std::deque<Eigen::VectorXd> s_hist, y_hist;
    std::deque<double> rho_hist;

    for (int iter = 0; iter < opts.max_iterations; ++iter) {
        res.iterations = iter;
        if (grad.lpNorm<Eigen::Infinity>() <= opts.gradient_tol) {
            res.converged = true;
            return res;
        }

        // two-loop recursion
        Eigen::VectorXd q = grad;
        std::vector<double> alpha(s_hist.size());
        for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
            alpha[i] = rho_hist[i] * s_hist[i].dot(q);
            q -= alpha[i] * y_hist[i];
        }
        if (!s_hist.empty()) {
            const double gamma =
                s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
            q *= gamma;
        }
        for (std::size_t i = 0; i < s_hist.size(); ++i) {
            const double beta = rho_hist[i] * y_hist[i].dot(q);
            q += (alpha[i] - beta) * s_hist[i];
        }
        Eigen::VectorXd dir = -q;
        double slope = grad.dot(dir);
        if (slope >= 0.0) {  // not a descent direction; reset to steepest
            dir = -grad;
            slope = -grad.squaredNorm();
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
        }

        // Armijo backtracking
        double step = 1.0;
        const double c1 = 1e-4;
        double f_new = 0.0;
        Eigen::VectorXd x_new(n);
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls) {
            x_new = res.x + step * dir;
            f_new = f(x_new);
            if (f_new <= res.value + c1 * step * slope) {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if (!accepted) {
            res.converged = grad.lpNorm<Eigen::Infinity>() <= 1e3 * opts.gradient_tol;
            return res;
        }

        Eigen::VectorXd grad_new = fd_gradient(f, x_new, opts.fd_step);
        const Eigen::VectorXd s = x_new - res.x;
        const Eigen::VectorXd y = grad_new - grad;
        const double sy = s.dot(y);
        if (sy > 1e-12 * s.norm() * y.norm()) {
            s_hist.push_back(s);
            y_hist.push_back(y);
            rho_hist.push_back(1.0 / sy);
            if (static_cast<int>(s_hist.size()) > opts.history) {
                s_hist.pop_front();
                y_hist.pop_front();
                rho_hist.pop_front();
            }
        }

        const double rel_step = s.norm() / (1.0 + res.x.norm());
        res.x = std::move(x_new);
        res.value = f_new;
        grad = std::move(grad_new);
        if (rel_step < opts.step_tol) {
            res.converged = true;
            return res;
        }
    }
    res.converged = grad.lpNorm<Eigen::Infinity>() <= 1e3 * opts.gradient_tol;
    return res;
}

}  // namespace rplab
