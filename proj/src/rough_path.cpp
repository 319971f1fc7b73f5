#include "rplab/rough_path.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace rplab {

RoughPathGrid make_grid(const PiecewiseLinearPath& skeleton, const Eigen::VectorXd& times,
                        const AlgebraShape& shape, double p) {
    if (p < 1.0) throw std::invalid_argument("make_grid: need p >= 1");
    if (times.size() < 2) throw std::invalid_argument("make_grid: need at least two times");
    RoughPathGrid g;
    g.shape = shape;
    g.times = times;
    g.p = p;
    g.increments.reserve(times.size() - 1);
    for (Eigen::Index i = 0; i + 1 < times.size(); ++i) {
        g.increments.push_back(path_signature(skeleton, times(i), times(i + 1), shape));
    }
    g.skeleton = skeleton;
    return g;
}

RoughPathGrid make_uniform_grid(const PiecewiseLinearPath& skeleton, Eigen::Index cells,
                                const AlgebraShape& shape, double p) {
    Eigen::VectorXd t(cells + 1);
    const double a = skeleton.t_begin(), b = skeleton.t_end();
    for (Eigen::Index i = 0; i <= cells; ++i) {
        t(i) = a + (b - a) * static_cast<double>(i) / static_cast<double>(cells);
    }
    return make_grid(skeleton, t, shape, p);
}

std::vector<GroupElement> prefix_products(const RoughPathGrid& x) {
    std::vector<GroupElement> prefixes;
    prefixes.reserve(x.increments.size() + 1);
    prefixes.push_back(unit(x.shape));
    for (const auto& inc : x.increments) {
        prefixes.push_back(multiply(prefixes.back(), inc));
    }
    return prefixes;
}

GroupElement grid_increment(const RoughPathGrid& x, Eigen::Index i, Eigen::Index j) {
    if (i > j || j > x.cell_count()) throw std::invalid_argument("grid_increment: bad cell range");
    GroupElement acc = unit(x.shape);
    for (Eigen::Index k = i; k < j; ++k) acc = multiply(acc, x.increments[k]);
    return acc;
}

RoughPathGrid lift(const RoughPathGrid& x, int N) {
    if (N <= x.shape.N) throw std::invalid_argument("lift: target depth must exceed current depth");
    if (!x.skeleton) {
        throw std::runtime_error("lift: unsupported without a generating skeleton");
    }
    RoughPathGrid out = make_grid(*x.skeleton, x.times, AlgebraShape(x.shape.d, N), x.p);
    return out;
}

namespace {

template <typename PairFn>
void for_grid_pairs(const RoughPathGrid& x, double delta, PairFn&& fn) {
    const auto prefixes = prefix_products(x);
    const Eigen::Index n = x.cell_count();
    for (Eigen::Index i = 0; i < n; ++i) {
        const GroupElement inv_i = inverse(prefixes[i]);
        for (Eigen::Index j = i + 1; j <= n; ++j) {
            const double dt = x.times(j) - x.times(i);
            if (dt > delta) break;
            fn(i, j, multiply(inv_i, prefixes[j]), dt);
        }
    }
}

}  // namespace

double hoelder_norm(const RoughPathGrid& x) {
    return small_scale_modulus(x, std::numeric_limits<double>::infinity());
}

double small_scale_modulus(const RoughPathGrid& x, double delta) {
    if (delta <= 0.0) throw std::invalid_argument("small_scale_modulus: need delta > 0");
    if (x.cell_count() < 1) throw std::invalid_argument("small_scale_modulus: need >= 2 times");
    double sup = 0.0;
    const double inv_p = 1.0 / x.p;
    for_grid_pairs(x, delta, [&](Eigen::Index, Eigen::Index, const GroupElement& inc, double dt) {
        sup = std::max(sup, homogeneous_norm(inc) / std::pow(dt, inv_p));
    });
    return sup;
}

namespace {

void require_common_grid(const RoughPathGrid& x, const RoughPathGrid& y) {
    if (!(x.shape == y.shape) || x.times.size() != y.times.size() ||
        (x.times - y.times).cwiseAbs().maxCoeff() != 0.0) {
        throw std::invalid_argument("grids must share shape and dissection");
    }
}

template <typename WeightFn>
double pairwise_distance_sup(const RoughPathGrid& x, const RoughPathGrid& y, WeightFn&& w) {
    require_common_grid(x, y);
    const auto px = prefix_products(x);
    const auto py = prefix_products(y);
    const Eigen::Index n = x.cell_count();
    double sup = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const GroupElement xinv = inverse(px[i]);
        const GroupElement yinv = inverse(py[i]);
        for (Eigen::Index j = i + 1; j <= n; ++j) {
            const GroupElement xij = multiply(xinv, px[j]);
            const GroupElement yij = multiply(yinv, py[j]);
            bool identical = true;
            for (int k = 1; identical && k <= x.shape.N; ++k) {
                identical = xij.level(k) == yij.level(k);
            }
            if (identical) continue;  // exact zero distance
            const double dist = homogeneous_norm(multiply(inverse(xij), yij));
            sup = std::max(sup, dist * w(x.times(j) - x.times(i)));
        }
    }
    return sup;
}

}  // namespace

double hoelder_distance(const RoughPathGrid& x, const RoughPathGrid& y) {
    const double inv_p = 1.0 / x.p;
    return pairwise_distance_sup(x, y, [&](double dt) { return std::pow(dt, -inv_p); });
}

double sup_distance(const RoughPathGrid& x, const RoughPathGrid& y) {
    return pairwise_distance_sup(x, y, [](double) { return 1.0; });
}

double chen_defect(const RoughPathGrid& x) {
    if (!x.skeleton) {
        throw std::runtime_error("chen_defect: needs a skeleton for the independent route");
    }
    double worst = 0.0;
    for (Eigen::Index i = 0; i + 2 <= x.cell_count(); ++i) {
        const GroupElement via_product = multiply(x.increments[i], x.increments[i + 1]);
        const GroupElement direct =
            path_signature(*x.skeleton, x.times(i), x.times(i + 2), x.shape);
        for (int k = 0; k <= x.shape.N; ++k) {
            worst = std::max(worst,
                             (via_product.level(k) - direct.level(k)).cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

}  // namespace rplab
