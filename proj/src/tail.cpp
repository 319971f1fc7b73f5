#include "rplab/tail.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rplab/euler.hpp"
#include "rplab/ode.hpp"
#include "rplab/parallel.hpp"

namespace rplab {

GaussTailReport gauss_tail_probe(const std::vector<double>& samples, int q_max) {
    if (samples.size() < 1000) {
        throw std::invalid_argument("gauss_tail_probe: need at least 1000 samples");
    }
    if (q_max < 2) throw std::invalid_argument("gauss_tail_probe: need q_max >= 2");
    GaussTailReport rep;
    rep.samples = static_cast<int>(samples.size());

    std::vector<double> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    const double lo = sorted.front(), hi = sorted.back();
    if (hi - lo <= 1e-12 * (1.0 + std::abs(hi))) {
        rep.degenerate = true;  // point mass
        rep.pass = true;
        return rep;
    }

    // survival on quantile thresholds, dropping empty tails
    std::vector<double> ms, lps;
    for (double q = 0.50; q <= 0.985; q += 0.04) {
        const double m = quantile_sorted(sorted, q);
        const auto above = static_cast<double>(
            sorted.end() - std::upper_bound(sorted.begin(), sorted.end(), m));
        if (above >= 5.0) {
            ms.push_back(m);
            lps.push_back(std::log(above / static_cast<double>(sorted.size())));
        }
    }
    const auto n_pts = static_cast<Eigen::Index>(ms.size());
    rep.thresholds = Eigen::Map<Eigen::VectorXd>(ms.data(), n_pts);
    rep.log_survival = Eigen::Map<Eigen::VectorXd>(lps.data(), n_pts);

    const Eigen::VectorXd m2 = rep.thresholds.array().square();
    rep.alpha_hat = -fit_line(m2, rep.log_survival).slope;
    rep.quad_coefficient = polyfit(rep.thresholds, rep.log_survival, 2)(2);

    rep.q_values.resize(q_max);
    rep.moment_norms.resize(q_max);
    for (int q = 1; q <= q_max; ++q) {
        double acc = 0.0;
        for (double v : samples) acc += std::pow(v, q);
        rep.q_values(q - 1) = q;
        rep.moment_norms(q - 1) = std::pow(acc / static_cast<double>(samples.size()), 1.0 / q);
    }
    rep.moment_growth_slope = fit_line(rep.q_values.array().log().matrix(),
                                       rep.moment_norms.array().log().matrix())
                                  .slope;
    rep.pass = rep.alpha_hat > 0.0 && rep.moment_growth_slope <= 0.6;
    return rep;
}

namespace {

double envelope_sse(double c, double a, const std::vector<double>& r,
                    const std::vector<double>& lp) {
    double acc = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const double model = std::log(c) - std::pow(r[i], a) / c;
        acc += (lp[i] - model) * (lp[i] - model);
    }
    return acc;
}

/// Fit c in c exp(-R^a / c) by golden-section search on ln c.
double fit_envelope_scale(double a, const std::vector<double>& r, const std::vector<double>& lp) {
    double lo = std::log(1e-4), hi = std::log(1e4);
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = envelope_sse(std::exp(x1), a, r, lp);
    double f2 = envelope_sse(std::exp(x2), a, r, lp);
    for (int it = 0; it < 80; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = envelope_sse(std::exp(x1), a, r, lp);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = envelope_sse(std::exp(x2), a, r, lp);
        }
    }
    return std::exp(0.5 * (lo + hi));
}

double trajectory_hoelder_distance(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                                   const Eigen::VectorXd& times, double p) {
    double sup = 0.0;
    const double inv_p = 1.0 / p;
    for (Eigen::Index i = 0; i + 1 < times.size(); ++i) {
        for (Eigen::Index j = i + 1; j < times.size(); ++j) {
            const double diff =
                ((a.col(j) - a.col(i)) - (b.col(j) - b.col(i))).norm();
            if (diff == 0.0) continue;
            sup = std::max(sup, diff / std::pow(times(j) - times(i), inv_p));
        }
    }
    return sup;
}

}  // namespace

TailReport azencott_tail_experiment(const VectorFieldFamily& V, int N, double p,
                                    const Eigen::VectorXd& t_grid, const Eigen::VectorXd& r_grid,
                                    int samples, std::uint64_t seed, const Eigen::VectorXd& y0,
                                    int fine_level, double ode_tol, int workers) {
    if (!(p > 2.0 && p < 3.0)) throw std::invalid_argument("azencott: need p in (2,3)");
    if (N < static_cast<int>(p) + 1) throw std::invalid_argument("azencott: need N >= [p]+1");
    if (samples < 1) throw std::invalid_argument("azencott: need samples >= 1");
    for (Eigen::Index i = 0; i < t_grid.size(); ++i) {
        if (!(t_grid(i) > 0.0 && t_grid(i) <= 1.0)) {
            throw std::invalid_argument("azencott: t values must lie in (0,1]");
        }
    }

    const int d = V.driver_dim();
    const AlgebraShape shape(d, N);
    const Eigen::Index nt = t_grid.size(), nr = r_grid.size();

    const EulerContraction table(V, N, y0);
    Eigen::MatrixXd defect(samples, nt);  // sup_{s <= t} |y_{0,s} - I[y_0, N, x_{0,s}]|

    parallel_for(
        samples,
        [&](long si) {
            const EBMSample sample =
                ebm_sample(d, fine_level, p, seed, static_cast<std::uint64_t>(si));
            const PiecewiseLinearPath& skel = sample.fine_skeleton;
            const Trajectory ref = ode_solve_reference(V, y0, skel, ode_tol);

            GroupElement prefix = unit(shape);
            double running = 0.0;
            Eigen::Index next_t = 0;
            Eigen::VectorXd row(nt);
            for (Eigen::Index s = 1; s < skel.times.size(); ++s) {
                prefix = multiply(
                    prefix, segment_signature(skel.points.col(s) - skel.points.col(s - 1), shape));
                running = std::max(
                    running, (ref.states.col(s) - y0 - table.apply(prefix)).norm());
                while (next_t < nt && skel.times(s) >= t_grid(next_t) - 1e-12) {
                    row(next_t++) = running;
                }
            }
            while (next_t < nt) row(next_t++) = running;
            defect.row(si) = row.transpose();
        },
        workers);

    TailReport rep;
    rep.t_grid = t_grid;
    rep.r_grid = r_grid;
    rep.samples = samples;
    rep.castell_exponent = 2.0 / static_cast<double>(N + 1);
    rep.counts.setZero(nt, nr);
    rep.probabilities.setZero(nt, nr);
    rep.ci_half_widths.setZero(nt, nr);
    rep.probabilities_hoelder.setZero(nt, nr);
    rep.envelope_c.setZero(nt);

    for (Eigen::Index ti = 0; ti < nt; ++ti) {
        const double brownian_scale = std::pow(t_grid(ti), 0.5 * (N + 1));
        const double hoelder_scale = std::pow(t_grid(ti), static_cast<double>(N + 1) / p);
        for (Eigen::Index ri = 0; ri < nr; ++ri) {
            long count = 0, count_h = 0;
            for (int si = 0; si < samples; ++si) {
                if (defect(si, ti) > r_grid(ri) * brownian_scale) ++count;
                if (defect(si, ti) > r_grid(ri) * hoelder_scale) ++count_h;
            }
            rep.counts(ti, ri) = static_cast<double>(count);
            const BinomialEstimate est = binomial_estimate(count, samples);
            rep.probabilities(ti, ri) = est.p_hat;
            rep.ci_half_widths(ti, ri) = est.half_width;
            rep.probabilities_hoelder(ti, ri) =
                static_cast<double>(count_h) / static_cast<double>(samples);
        }
    }

    // (a) monotone decay in R within confidence
    rep.monotone_pass = true;
    for (Eigen::Index ti = 0; ti < nt; ++ti) {
        for (Eigen::Index ri = 0; ri + 1 < nr; ++ri) {
            if (rep.probabilities(ti, ri + 1) >
                rep.probabilities(ti, ri) + rep.ci_half_widths(ti, ri) +
                    rep.ci_half_widths(ti, ri + 1)) {
                rep.monotone_pass = false;
            }
        }
    }

    // (b) the largest tested R must sit below the envelope fitted on the
    //     smaller R values
    rep.envelope_pass = true;
    for (Eigen::Index ti = 0; ti < nt; ++ti) {
        std::vector<double> rs, lps;
        for (Eigen::Index ri = 0; ri + 1 < nr; ++ri) {
            if (rep.probabilities(ti, ri) > 0.0) {
                rs.push_back(r_grid(ri));
                lps.push_back(std::log(rep.probabilities(ti, ri)));
            }
        }
        if (rs.size() < 2) continue;  // zero exceedances: bounds only
        const double c = fit_envelope_scale(rep.castell_exponent, rs, lps);
        rep.envelope_c(ti) = c;
        const double predicted =
            c * std::exp(-std::pow(r_grid(nr - 1), rep.castell_exponent) / c);
        if (rep.probabilities(ti, nr - 1) > predicted + rep.ci_half_widths(ti, nr - 1)) {
            rep.envelope_pass = false;
        }
    }

    // (c) near-collapse across t under the Brownian normalization
    rep.collapse_pass = true;
    for (Eigen::Index ti = 0; ti + 1 < nt; ++ti) {
        for (Eigen::Index ri = 0; ri < nr; ++ri) {
            const double gap =
                std::abs(rep.probabilities(ti, ri) - rep.probabilities(ti + 1, ri));
            rep.max_collapse_gap = std::max(rep.max_collapse_gap, gap);
            if (gap > 0.1 + rep.ci_half_widths(ti, ri) + rep.ci_half_widths(ti + 1, ri)) {
                rep.collapse_pass = false;
            }
        }
    }
    return rep;
}

LqReport lq_convergence_experiment(const VectorFieldFamily& V, double p,
                                   const std::vector<double>& q_list,
                                   const std::vector<int>& n_list, int samples,
                                   std::uint64_t seed, const Eigen::VectorXd& y0, int fine_level,
                                   double ode_tol, int workers) {
    if (n_list.size() < 2) throw std::invalid_argument("lq experiment: need >= 2 levels");
    for (std::size_t i = 0; i + 1 < n_list.size(); ++i) {
        if (n_list[i] >= n_list[i + 1]) {
            throw std::invalid_argument("lq experiment: levels must increase");
        }
    }
    if (samples < 2) throw std::invalid_argument("lq experiment: need samples >= 2");

    const int d = V.driver_dim();
    const auto nn = static_cast<Eigen::Index>(n_list.size());
    const auto nq = static_cast<Eigen::Index>(q_list.size());
    const int n_ref = n_list.back();

    Eigen::MatrixXd z(samples, nn);  // holder distances per (sample, level)
    std::vector<double> sup_norms(static_cast<std::size_t>(samples), 0.0);

    parallel_for(
        samples,
        [&](long si) {
            const EBMSample sample =
                ebm_sample(d, fine_level, p, seed, static_cast<std::uint64_t>(si));
            const DyadicApproximation ref_apx = dyadic_approximation(sample, n_ref);
            const Eigen::VectorXd eval_times = ref_apx.path.times;
            const Trajectory ref = ode_solve_reference(V, y0, ref_apx.path, ode_tol, &eval_times);

            double sup_norm = 0.0;
            for (Eigen::Index li = 0; li < nn; ++li) {
                const int n = n_list[static_cast<std::size_t>(li)];
                const DyadicApproximation apx =
                    (n == n_ref) ? ref_apx : dyadic_approximation(sample, n);
                sup_norm = std::max(sup_norm, hoelder_norm(apx.lifted));
                if (n == n_ref) {
                    z(si, li) = 0.0;  // proxy identity
                    continue;
                }
                const Trajectory sol = ode_solve_reference(V, y0, apx.path, ode_tol, &eval_times);
                z(si, li) = trajectory_hoelder_distance(sol.states, ref.states, eval_times, p);
            }
            sup_norms[static_cast<std::size_t>(si)] = sup_norm;
        },
        workers);

    LqReport rep;
    rep.n_levels = n_list;
    rep.q_list = q_list;
    rep.samples = samples;
    rep.sup_holder_norms = std::move(sup_norms);
    rep.moment_norms.setZero(nn, nq);
    rep.ci_half.setZero(nn, nq);

    for (Eigen::Index li = 0; li < nn; ++li) {
        for (Eigen::Index qi = 0; qi < nq; ++qi) {
            const double q = q_list[static_cast<std::size_t>(qi)];
            Eigen::VectorXd zq = z.col(li).array().pow(q);
            const double mq = zq.mean();
            const double se = std::sqrt(variance(zq) / static_cast<double>(samples));
            rep.moment_norms(li, qi) = std::pow(mq, 1.0 / q);
            // delta method for m -> m^{1/q}
            rep.ci_half(li, qi) =
                mq > 0.0 ? 1.96 * se * std::pow(mq, 1.0 / q - 1.0) / q : 0.0;
        }
    }

    rep.monotone_pass = true;
    for (Eigen::Index qi = 0; qi < nq; ++qi) {
        for (Eigen::Index li = 0; li + 1 < nn; ++li) {
            const double allowance =
                std::max(rep.ci_half(li, qi), rep.ci_half(li + 1, qi));
            if (rep.moment_norms(li + 1, qi) >= rep.moment_norms(li, qi) + allowance) {
                rep.monotone_pass = false;
            }
        }
    }
    return rep;
}

}  // namespace rplab
