#include "rplab/rate.hpp"

#include <cmath>
#include <stdexcept>

#include "rplab/euler.hpp"
#include "rplab/ode.hpp"
#include "rplab/stats.hpp"

namespace rplab {

namespace {

constexpr double kRoundoffFloor = 1e-12;

void require_uniform_times(const Eigen::VectorXd& t) {
    const double mesh = t(1) - t(0);
    for (Eigen::Index i = 0; i + 1 < t.size(); ++i) {
        if (std::abs((t(i + 1) - t(i)) - mesh) > 1e-12 * (1.0 + std::abs(mesh))) {
            throw std::invalid_argument("rate experiment: needs a uniform skeleton dissection");
        }
    }
}

}  // namespace

RateReport davie_rate_experiment(const VectorFieldFamily& V, int N, double p,
                                 const RoughPathGrid& x, const std::vector<double>& lengths,
                                 const Eigen::VectorXd& y0, double ode_tol,
                                 Eigen::Index max_starts) {
    if (lengths.size() < 3) {
        throw std::invalid_argument("rate experiment: need at least 3 window lengths");
    }
    if (!x.skeleton) {
        throw std::invalid_argument("rate experiment: grid must carry a fine skeleton");
    }
    const PiecewiseLinearPath& skel = *x.skeleton;
    require_uniform_times(skel.times);
    const Eigen::Index n_fine = skel.times.size() - 1;
    const double mesh = (skel.t_end() - skel.t_begin()) / static_cast<double>(n_fine);

    const AlgebraShape shape(x.shape.d, N);
    // prefix signatures at depth N over the fine dissection
    std::vector<GroupElement> prefixes;
    prefixes.reserve(n_fine + 1);
    prefixes.push_back(unit(shape));
    for (Eigen::Index i = 0; i < n_fine; ++i) {
        const Eigen::VectorXd delta = skel.points.col(i + 1) - skel.points.col(i);
        prefixes.push_back(multiply(prefixes.back(), segment_signature(delta, shape)));
    }

    if (y0.size() != V.state_dim()) {
        throw std::invalid_argument("rate experiment: starting point dimension mismatch");
    }
    const Trajectory ref = ode_solve_reference(V, y0, skel, ode_tol);

    RateReport report;
    report.theta_target = static_cast<double>(N + 1) / p;
    report.interval_lengths.resize(static_cast<Eigen::Index>(lengths.size()));
    report.errors.resize(static_cast<Eigen::Index>(lengths.size()));

    for (std::size_t li = 0; li < lengths.size(); ++li) {
        const double ell = lengths[li];
        const auto steps = static_cast<Eigen::Index>(std::llround(ell / mesh));
        if (steps < 1 || steps > n_fine ||
            std::abs(static_cast<double>(steps) * mesh - ell) > 1e-9 * ell) {
            throw std::invalid_argument("rate experiment: window length must align with the mesh");
        }
        const Eigen::Index last_start = n_fine - steps;
        const Eigen::Index stride =
            std::max<Eigen::Index>(1, (last_start + max_starts) / max_starts);
        double sup = 0.0;
        for (Eigen::Index s = 0; s <= last_start; s += stride) {
            const GroupElement window = multiply(inverse(prefixes[s]), prefixes[s + steps]);
            const Eigen::VectorXd y_s = ref.states.col(s);
            const Eigen::VectorXd defect = ref.states.col(s + steps) - y_s -
                                           euler_increment(V, N, window, y_s).value;
            sup = std::max(sup, defect.norm());
        }
        report.interval_lengths(static_cast<Eigen::Index>(li)) = ell;
        report.errors(static_cast<Eigen::Index>(li)) = sup;
        report.empirical_constant =
            std::max(report.empirical_constant, sup / std::pow(ell, report.theta_target));
    }

    // drop round-off-floor lengths, then fit
    std::vector<double> lx, ly;
    for (Eigen::Index i = 0; i < report.errors.size(); ++i) {
        if (report.errors(i) > kRoundoffFloor) {
            lx.push_back(std::log(report.interval_lengths(i)));
            ly.push_back(std::log(report.errors(i)));
        }
    }
    if (lx.size() < 3) {
        report.degenerate = true;
        report.note = report.errors.isZero(0.0)
                          ? "all-zero errors; regression refused"
                          : "fewer than 3 lengths above the round-off floor";
        return report;
    }
    const LinearFit fit = fit_line(Eigen::Map<Eigen::VectorXd>(lx.data(), lx.size()),
                                   Eigen::Map<Eigen::VectorXd>(ly.data(), ly.size()));
    report.fitted_slope = fit.slope;
    report.fitted_intercept = fit.intercept;
    return report;
}

ConstantGrowthReport constant_growth_probe(const VectorFieldFamily& V, int N, double p,
                                           const RoughPathGrid& base,
                                           const std::vector<double>& scale_grid,
                                           const std::vector<double>& lengths,
                                           const Eigen::VectorXd& y0, double ode_tol) {
    if (!base.skeleton) {
        throw std::invalid_argument("constant_growth_probe: grid must carry a skeleton");
    }
    for (double lam : scale_grid) {
        if (lam < 1.0) throw std::invalid_argument("constant_growth_probe: scales must be >= 1");
    }
    ConstantGrowthReport rep;
    const auto n = static_cast<Eigen::Index>(scale_grid.size());
    rep.scales.resize(n);
    rep.hoelder_norms.resize(n);
    rep.constants.resize(n);

    for (Eigen::Index i = 0; i < n; ++i) {
        const double lam = scale_grid[static_cast<std::size_t>(i)];
        const PiecewiseLinearPath scaled = scale(lam, *base.skeleton);
        const RoughPathGrid grid = make_grid(scaled, base.times, base.shape, base.p);
        rep.scales(i) = lam;
        rep.hoelder_norms(i) = hoelder_norm(grid);
        const RateReport rr = davie_rate_experiment(V, N, p, grid, lengths, y0, ode_tol);
        rep.constants(i) = rr.empirical_constant;
    }

    for (Eigen::Index i = 0; i + 1 < n; ++i) {
        if (rep.constants(i + 1) < rep.constants(i)) rep.monotone = false;
    }

    const bool all_zero = rep.constants.isZero(0.0);
    if (!all_zero) {
        Eigen::VectorXd u(n), v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            u(i) = std::log(rep.hoelder_norms(i));
            v(i) = std::log(std::max(rep.constants(i), 1e-300));
        }
        rep.quad_fit = polyfit(u, v, 2);
        rep.quadratic_coefficient = rep.quad_fit(2);
        if (n >= 5) {
            const Eigen::VectorXd cubic = polyfit(u, v, 3);
            rep.cubic_coefficient = cubic(3);
            rep.cubic_check_ran = true;
            // one-sided: super-quadratic escape needs a significantly
            // positive cubic term; saturating (concave) growth passes
            rep.at_most_quadratic =
                rep.cubic_coefficient <= 0.05 * std::abs(rep.quadratic_coefficient) + 1e-9;
        }
    } else {
        rep.quad_fit = Eigen::VectorXd::Zero(3);
    }
    return rep;
}

}  // namespace rplab
