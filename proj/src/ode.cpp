#include "rplab/ode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rplab {

Eigen::VectorXd Trajectory::state_at(double t) const {
    if (t <= times(0)) return states.col(0);
    const Eigen::Index m = times.size() - 1;
    if (t >= times(m)) return states.col(m);
    const double* begin = times.data();
    const Eigen::Index i = std::upper_bound(begin, begin + times.size(), t) - begin - 1;
    const double w = (t - times(i)) / (times(i + 1) - times(i));
    return states.col(i) + w * (states.col(i + 1) - states.col(i));
}

namespace {

// Dormand-Prince 5(4) pair
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

template <typename Rhs>
void integrate_fixed_direction(const Rhs& f, Eigen::VectorXd& y, double span, double tol) {
    if (span <= 0.0) return;
    double t = 0.0;
    double h = span;
    Eigen::VectorXd k1 = f(y);
    int rejects_in_a_row = 0;
    while (t < span) {
        h = std::min(h, span - t);
        if (h < 1e-14 * span) {
            throw std::runtime_error("ode: step-size underflow (stiffness failure)");
        }
        const Eigen::VectorXd k2 = f(y + h * (a21 * k1));
        const Eigen::VectorXd k3 = f(y + h * (a31 * k1 + a32 * k2));
        const Eigen::VectorXd k4 = f(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::VectorXd k5 = f(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::VectorXd k6 =
            f(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const Eigen::VectorXd y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::VectorXd k7 = f(y5);
        const Eigen::VectorXd err_vec =
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        double err = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double scale = tol + tol * std::max(std::abs(y(i)), std::abs(y5(i)));
            err = std::max(err, std::abs(err_vec(i)) / scale);
        }
        if (err <= 1.0) {
            t += h;
            y = y5;
            k1 = k7;  // FSAL
            rejects_in_a_row = 0;
            h *= std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 1.0, 5.0);
        } else {
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            if (++rejects_in_a_row > 60) {
                throw std::runtime_error("ode: repeated step rejection (stiffness failure)");
            }
        }
    }
}

}  // namespace

Trajectory ode_solve_reference(const VectorFieldFamily& V, const Eigen::VectorXd& y0,
                               const PiecewiseLinearPath& x, double tol,
                               const Eigen::VectorXd* output_times) {
    if (tol <= 0.0) throw std::invalid_argument("ode: need tol > 0");
    if (V.driver_dim() != x.dim()) throw std::invalid_argument("ode: driver dimension mismatch");

    Eigen::VectorXd out_t;
    if (output_times != nullptr) {
        out_t = *output_times;
    } else {
        out_t = x.times;
    }

    Trajectory traj;
    traj.scheme = "reference";
    traj.times = out_t;
    traj.states.resize(y0.size(), out_t.size());

    Eigen::VectorXd y = y0;
    Eigen::Index next_out = 0;
    double t = x.t_begin();
    while (next_out < out_t.size() && out_t(next_out) <= t) {
        traj.states.col(next_out++) = y;
    }

    const int d = x.dim();
    for (Eigen::Index seg = 0; seg + 1 < x.times.size(); ++seg) {
        const double t0 = x.times(seg), t1 = x.times(seg + 1);
        const Eigen::VectorXd slope = (x.points.col(seg + 1) - x.points.col(seg)) / (t1 - t0);
        auto rhs = [&](const Eigen::VectorXd& state) {
            Eigen::VectorXd v = Eigen::VectorXd::Zero(state.size());
            for (int i = 0; i < d; ++i) {
                if (slope(i) != 0.0) v += slope(i) * V.value(i, state);
            }
            return v;
        };
        double cursor = t0;
        // land exactly on the output times inside this segment
        while (next_out < out_t.size() && out_t(next_out) <= t1) {
            const double target = out_t(next_out);
            integrate_fixed_direction(rhs, y, target - cursor, tol);
            cursor = target;
            traj.states.col(next_out++) = y;
        }
        integrate_fixed_direction(rhs, y, t1 - cursor, tol);
        t = t1;
    }
    while (next_out < out_t.size()) {  // times at or past the end
        traj.states.col(next_out++) = y;
    }
    return traj;
}

Eigen::VectorXd ode_endpoint(const VectorFieldFamily& V, const Eigen::VectorXd& y0,
                             const PiecewiseLinearPath& x, double tol) {
    Eigen::VectorXd end_time(1);
    end_time << x.t_end();
    return ode_solve_reference(V, y0, x, tol, &end_time).states.col(0);
}

}  // namespace rplab
