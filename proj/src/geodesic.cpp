#include "rplab/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "rplab/quasi_newton.hpp"

namespace rplab {

GroupElement signature_of_increments(const Eigen::MatrixXd& increments,
                                     const AlgebraShape& shape) {
    GroupElement acc = unit(shape);
    for (Eigen::Index j = 0; j < increments.cols(); ++j) {
        acc = multiply(acc, segment_signature(increments.col(j), shape));
    }
    return acc;
}

namespace {

using SegmentList = std::vector<Eigen::VectorXd>;

void append_reversed_negated(SegmentList& out, const SegmentList& in) {
    for (auto it = in.rbegin(); it != in.rend(); ++it) out.push_back(-*it);
}

/// Iterated group commutator realizing the right-nested bracket of the
/// scaled letters: levels below the word length vanish identically and
/// the word-length level equals the bracket of the letters.
SegmentList commutator_word(const std::vector<Eigen::VectorXd>& letters) {
    SegmentList current{letters.back()};
    for (int j = static_cast<int>(letters.size()) - 2; j >= 0; --j) {
        SegmentList next;
        next.push_back(letters[j]);
        for (const auto& s : current) next.push_back(s);
        next.push_back(-letters[j]);
        append_reversed_negated(next, current);
        current = std::move(next);
    }
    return current;
}

Eigen::MatrixXd to_matrix(const SegmentList& segs, int d) {
    Eigen::MatrixXd m(d, static_cast<Eigen::Index>(segs.size()));
    for (Eigen::Index j = 0; j < m.cols(); ++j) m.col(j) = segs[static_cast<std::size_t>(j)];
    return m;
}

double max_level_defect(const GroupElement& have, const GroupElement& want) {
    double worst = 0.0;
    for (int k = 1; k <= have.shape().N; ++k) {
        worst = std::max(worst, (have.level(k) - want.level(k)).cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace

PiecewiseLinearPath chow_decompose(const GroupElement& g) {
    if (!is_group_like(g, 1e-8)) {
        throw std::invalid_argument("chow_decompose: input is not group-like");
    }
    const AlgebraShape& sh = g.shape();
    const int d = sh.d;
    constexpr double kTarget = 1e-9;
    constexpr int kMaxRounds = 200;

    SegmentList segments;
    if (g.level(1).norm() > 0.0) segments.push_back(g.level(1));

    for (int round = 0; round < kMaxRounds; ++round) {
        const GroupElement current = signature_of_increments(to_matrix(segments, d), sh);
        const LieSeries defect = log(multiply(inverse(current), g));

        int level = 0;
        for (int k = 1; k <= sh.N; ++k) {
            if (defect.level(k).cwiseAbs().maxCoeff() > kTarget) {
                level = k;
                break;
            }
        }
        if (level == 0) {
            return path_from_increments(to_matrix(segments, d), Eigen::VectorXd::Zero(d));
        }
        if (level == 1) {
            segments.push_back(defect.level(1));
            continue;
        }

        // decompose the first unmatched level into right-nested bracket
        // words: L = (1/k) sum_w L_w [e_{w_1},[...,[e_{w_{k-1}}, e_{w_k}]]].
        // Words whose innermost bracket repeats a letter vanish; words
        // differing by the innermost swap differ by a sign and merge.
        const auto& block = defect.level(level);
        std::map<std::vector<int>, double> canonical;
        std::vector<int> word(level, 0);
        for (Eigen::Index idx = 0; idx < block.size(); ++idx) {
            double mu = block(idx) / static_cast<double>(level);
            std::vector<int> w = word;
            if (w[level - 1] != w[level - 2]) {
                if (w[level - 1] < w[level - 2]) {
                    std::swap(w[level - 1], w[level - 2]);
                    mu = -mu;
                }
                canonical[w] += mu;
            }
            int pos = level - 1;
            while (pos >= 0 && word[pos] == d - 1) word[pos--] = 0;
            if (pos >= 0) ++word[pos];
        }
        for (const auto& [w, mu] : canonical) {
            if (std::abs(mu) <= kTarget / static_cast<double>(block.size())) continue;
            double eps = std::pow(std::abs(mu), 1.0 / level);
            eps = std::clamp(eps, 1e-6, 1.0);
            std::vector<Eigen::VectorXd> letters(w.size());
            for (std::size_t j = 0; j < w.size(); ++j) {
                letters[j] = eps * Eigen::VectorXd::Unit(d, w[j]);
            }
            if (mu < 0.0) letters[0] = -letters[0];
            for (auto& s : commutator_word(letters)) segments.push_back(std::move(s));
        }
    }

    const GroupElement current = signature_of_increments(to_matrix(segments, d), sh);
    std::ostringstream msg;
    msg << "chow_decompose: correction loop failed to contract; residual defect "
        << max_level_defect(current, g);
    throw std::runtime_error(msg.str());
}

double cc_norm_lower(const GroupElement& g) {
    double best = 0.0;
    double factorial = 1.0;
    for (int k = 1; k <= g.shape().N; ++k) {
        factorial *= k;
        const double nk = g.level(k).norm();
        if (nk > 0.0) best = std::max(best, std::pow(factorial * nk, 1.0 / k));
    }
    return best;
}

namespace {

// (phi - sin phi) / (8 sin^2(phi/2)): segment-area over chord-length
// squared for a circular arc with opening angle phi; increasing on
// (0, 2 pi), 0+ at 0, unbounded at 2 pi.
double arc_area_ratio(double phi) {
    const double s = std::sin(0.5 * phi);
    return (phi - std::sin(phi)) / (8.0 * s * s);
}

double solve_arc_angle(double target) {
    double lo = 1e-12, hi = 2.0 * std::numbers::pi - 1e-12;
    if (target <= arc_area_ratio(lo)) return lo;
    if (target >= arc_area_ratio(hi)) return hi;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (arc_area_ratio(mid) < target) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-12) break;
    }
    return 0.5 * (lo + hi);
}

void require_heisenberg_shape(const GroupElement& g) {
    if (g.shape().d != 2 || g.shape().N != 2) {
        throw std::invalid_argument("heisenberg oracle: requires d = 2, N = 2");
    }
}

double levy_area_coordinate(const GroupElement& g) {
    const LieSeries l = log(g);
    return 0.5 * (l.level(2)(1) - l.level(2)(2));  // entries (1,2) and (2,1)
}

}  // namespace

double heisenberg_cc_norm(const GroupElement& g) {
    require_heisenberg_shape(g);
    if (!is_group_like(g, 1e-8)) {
        throw std::invalid_argument("heisenberg oracle: input is not group-like");
    }
    const double c = g.level(1).norm();
    const double a = std::abs(levy_area_coordinate(g));
    if (a <= 1e-14 * (1.0 + c * c)) return c;
    // nearly closed: the chord correction is O(c / sqrt(a)) relative
    if (c * c <= 1e-10 * a) return 2.0 * std::sqrt(std::numbers::pi * a);
    const double phi = solve_arc_angle(a / (c * c));
    return c * phi / (2.0 * std::sin(0.5 * phi));
}

PiecewiseLinearPath heisenberg_arc_path(const Eigen::Vector2d& w, double a, int m) {
    if (m < 1) throw std::invalid_argument("heisenberg_arc_path: need m >= 1");
    const double c = w.norm();
    Eigen::MatrixXd pts(2, m + 1);

    if (std::abs(a) < 1e-14 * (1.0 + c * c)) {
        for (int j = 0; j <= m; ++j) pts.col(j) = (static_cast<double>(j) / m) * w;
    } else if (c < 1e-14 * (1.0 + std::sqrt(std::abs(a)))) {
        // closed loop: circle through the origin with enclosed area |a|
        const double r = std::sqrt(std::abs(a) / std::numbers::pi);
        const double orient = a > 0.0 ? 1.0 : -1.0;
        const Eigen::Vector2d center(r, 0.0);
        for (int j = 0; j <= m; ++j) {
            const double th =
                std::numbers::pi + orient * 2.0 * std::numbers::pi * static_cast<double>(j) / m;
            pts.col(j) = center + r * Eigen::Vector2d(std::cos(th), std::sin(th));
        }
        pts.col(0).setZero();
        pts.col(m).setZero();
    } else {
        const double phi = solve_arc_angle(std::abs(a) / (c * c));
        const double rho = c / (2.0 * std::sin(0.5 * phi));
        const Eigen::Vector2d chord_dir = w / c;
        const Eigen::Vector2d left_normal(-chord_dir(1), chord_dir(0));
        // center on the side that produces the requested area sign:
        // counterclockwise arcs (a > 0) bulge right of the chord
        const double side = a > 0.0 ? 1.0 : -1.0;
        const Eigen::Vector2d center = 0.5 * w + side * rho * std::cos(0.5 * phi) * left_normal;
        const Eigen::Vector2d start_dir = (-center).normalized();
        const double th0 = std::atan2(start_dir(1), start_dir(0));
        for (int j = 0; j <= m; ++j) {
            const double th = th0 + side * phi * static_cast<double>(j) / m;
            pts.col(j) = center + rho * Eigen::Vector2d(std::cos(th), std::sin(th));
        }
        pts.col(0).setZero();
        pts.col(m) = w;
    }

    Eigen::MatrixXd inc(2, m);
    for (int j = 0; j < m; ++j) inc.col(j) = pts.col(j + 1) - pts.col(j);
    return path_from_increments(inc, Eigen::Vector2d::Zero());
}

namespace {

Eigen::MatrixXd resample_to_m_segments(const PiecewiseLinearPath& path, int m) {
    std::vector<Eigen::VectorXd> segs;
    for (Eigen::Index i = 0; i + 1 < path.times.size(); ++i) {
        Eigen::VectorXd d = path.points.col(i + 1) - path.points.col(i);
        if (d.norm() > 0.0) segs.push_back(std::move(d));
    }
    const int dim = path.dim();
    if (segs.empty()) segs.push_back(Eigen::VectorXd::Zero(dim));
    if (static_cast<int>(segs.size()) > m) {
        throw std::invalid_argument("cc_norm_upper: seed needs more segments than cfg.m allows");
    }
    while (static_cast<int>(segs.size()) < m) {
        std::size_t longest = 0;
        for (std::size_t j = 1; j < segs.size(); ++j) {
            if (segs[j].norm() > segs[longest].norm()) longest = j;
        }
        const Eigen::VectorXd half = 0.5 * segs[longest];
        segs[longest] = half;
        segs.insert(segs.begin() + static_cast<std::ptrdiff_t>(longest), half);
    }
    Eigen::MatrixXd out(dim, m);
    for (int j = 0; j < m; ++j) out.col(j) = segs[static_cast<std::size_t>(j)];
    return out;
}

double smoothed_length(const Eigen::MatrixXd& inc) {
    constexpr double eta2 = 1e-18;
    double acc = 0.0;
    for (Eigen::Index j = 0; j < inc.cols(); ++j) {
        acc += std::sqrt(inc.col(j).squaredNorm() + eta2);
    }
    return acc;
}

double signature_penalty(const Eigen::MatrixXd& inc, const GroupElement& target) {
    const GroupElement s = signature_of_increments(inc, target.shape());
    double acc = 0.0;
    for (int k = 1; k <= target.shape().N; ++k) {
        acc += (s.level(k) - target.level(k)).squaredNorm();
    }
    return acc;
}

struct PinnedLengthResult {
    Eigen::MatrixXd increments;
    double length = 0.0;
    double defect = 0.0;
};

PinnedLengthResult minimize_pinned_length(const GroupElement& g, Eigen::MatrixXd seed,
                                          const GeodesicFamilyConfig& cfg) {
    const AlgebraShape& sh = g.shape();
    const int d = sh.d;
    const int m = static_cast<int>(seed.cols());

    Eigen::VectorXd theta = Eigen::Map<Eigen::VectorXd>(seed.data(), d * m);
    double mu = cfg.penalty_start;
    MinimizeOptions opts;
    opts.max_iterations = cfg.max_inner;
    for (int round = 0; round < cfg.penalty_rounds; ++round) {
        Objective obj = [&](const Eigen::VectorXd& v) {
            const Eigen::Map<const Eigen::MatrixXd> inc(v.data(), d, m);
            return smoothed_length(inc) + mu * signature_penalty(inc, g);
        };
        opts.gradient_tol = std::max(1e-10, 1e-7 / mu);
        theta = minimize_fd(obj, theta, opts).x;
        mu *= 10.0;
    }

    PinnedLengthResult res;
    res.increments = Eigen::Map<Eigen::MatrixXd>(theta.data(), d, m);
    res.length = 0.0;
    for (int j = 0; j < m; ++j) res.length += res.increments.col(j).norm();
    res.defect =
        max_level_defect(signature_of_increments(res.increments, sh), g);
    return res;
}

Eigen::MatrixXd upper_bound_seed(const GroupElement& g, int m) {
    if (g.shape().d == 2 && g.shape().N == 2) {
        const Eigen::Vector2d w = g.level(1);
        const double a = 0.5 * (rplab::log(g).level(2)(1) - rplab::log(g).level(2)(2));
        const PiecewiseLinearPath arc = heisenberg_arc_path(w, a, m);
        Eigen::MatrixXd inc(2, m);
        for (int j = 0; j < m; ++j) inc.col(j) = arc.points.col(j + 1) - arc.points.col(j);
        return inc;
    }
    return resample_to_m_segments(chow_decompose(g), m);
}

}  // namespace

CCBounds cc_norm_upper(const GroupElement& g, const GeodesicFamilyConfig& cfg) {
    if (cfg.K < 1.0 || cfg.m < 1 || cfg.tol <= 0.0) {
        throw std::invalid_argument("cc_norm_upper: invalid config");
    }
    CCBounds out;
    out.lower = cc_norm_lower(g);
    out.segments = cfg.m;
    if (homogeneous_norm(g) == 0.0) {
        out.path = path_from_increments(Eigen::MatrixXd(g.shape().d, 0),
                                        Eigen::VectorXd::Zero(g.shape().d));
        out.segments = 0;
        return out;
    }

    const PinnedLengthResult res = minimize_pinned_length(g, upper_bound_seed(g, cfg.m), cfg);
    if (res.defect > cfg.tol) {
        std::ostringstream msg;
        msg << "cc_norm_upper: constraint violation " << res.defect << " exceeds tol " << cfg.tol;
        throw std::runtime_error(msg.str());
    }
    out.upper = res.length;
    out.defect = res.defect;
    out.path = path_from_increments(res.increments, Eigen::VectorXd::Zero(g.shape().d));
    if (out.lower > out.upper + 1e-6 * (1.0 + out.lower)) {
        throw std::runtime_error("cc_norm_upper: lower bound exceeds upper bound");
    }
    return out;
}

std::vector<GeodesicCell> geodesic_family(const RoughPathGrid& x,
                                          const GeodesicFamilyConfig& cfg) {
    std::vector<GeodesicCell> cells;
    cells.reserve(x.increments.size());
    const double grid_norm = hoelder_norm(x);
    for (Eigen::Index i = 0; i < x.cell_count(); ++i) {
        const GroupElement& target = x.increments[i];
        const double dt = x.times(i + 1) - x.times(i);
        GeodesicCell cell;
        cell.budget = cfg.K * grid_norm * std::pow(dt, 1.0 / x.p);

        if (homogeneous_norm(target) == 0.0) {
            Eigen::VectorXd t(2);
            t << x.times(i), x.times(i + 1);
            Eigen::MatrixXd pts = Eigen::MatrixXd::Zero(x.shape.d, 2);
            cell.path = PiecewiseLinearPath(t, pts);
        } else {
            const PinnedLengthResult res =
                minimize_pinned_length(target, upper_bound_seed(target, cfg.m), cfg);
            cell.length = res.length;
            cell.defect = res.defect;
            PiecewiseLinearPath unitpath =
                path_from_increments(res.increments, Eigen::VectorXd::Zero(x.shape.d));
            // reparametrize onto the cell interval
            Eigen::VectorXd t = (x.times(i) + unitpath.times.array() * dt).matrix();
            t(t.size() - 1) = x.times(i + 1);
            cell.path = PiecewiseLinearPath(t, unitpath.points);
        }
        cell.within_budget = cell.length <= cell.budget * (1.0 + 1e-9) + 1e-12;
        cells.push_back(std::move(cell));
    }
    return cells;
}

}  // namespace rplab
