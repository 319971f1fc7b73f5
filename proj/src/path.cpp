#include "rplab/path.hpp"

#include <algorithm>
#include <stdexcept>

namespace rplab {

PiecewiseLinearPath::PiecewiseLinearPath(Eigen::VectorXd t, Eigen::MatrixXd p)
    : times(std::move(t)), points(std::move(p)) {
    if (times.size() < 1 || points.cols() != times.size()) {
        throw std::invalid_argument("path: need one point per timestamp");
    }
    for (Eigen::Index i = 0; i + 1 < times.size(); ++i) {
        if (!(times(i) < times(i + 1))) {
            throw std::invalid_argument("path: times must be strictly increasing");
        }
    }
}

Eigen::VectorXd PiecewiseLinearPath::position(double t) const {
    if (t <= times(0)) return points.col(0);
    const Eigen::Index m = times.size() - 1;
    if (t >= times(m)) return points.col(m);
    const double* begin = times.data();
    const Eigen::Index i = std::upper_bound(begin, begin + times.size(), t) - begin - 1;
    const double w = (t - times(i)) / (times(i + 1) - times(i));
    return points.col(i) + w * (points.col(i + 1) - points.col(i));
}

double PiecewiseLinearPath::length() const { return length(t_begin(), t_end()); }

double PiecewiseLinearPath::length(double s, double t) const {
    if (s > t) throw std::invalid_argument("path length: need s <= t");
    double acc = 0.0;
    for (Eigen::Index i = 0; i + 1 < times.size(); ++i) {
        const double lo = std::max(s, times(i));
        const double hi = std::min(t, times(i + 1));
        if (hi <= lo) continue;
        const double frac = (hi - lo) / (times(i + 1) - times(i));
        acc += frac * (points.col(i + 1) - points.col(i)).norm();
    }
    return acc;
}

PiecewiseLinearPath path_from_increments(const Eigen::MatrixXd& increments,
                                         const Eigen::VectorXd& origin) {
    const Eigen::Index m = increments.cols();
    if (m == 0) {
        Eigen::VectorXd t(1);
        t << 0.0;
        Eigen::MatrixXd pts(origin.size(), 1);
        pts.col(0) = origin;
        PiecewiseLinearPath out;
        out.times = t;
        out.points = pts;
        return out;
    }
    Eigen::MatrixXd pts(origin.size(), m + 1);
    pts.col(0) = origin;
    for (Eigen::Index j = 0; j < m; ++j) pts.col(j + 1) = pts.col(j) + increments.col(j);

    Eigen::VectorXd lens(m);
    for (Eigen::Index j = 0; j < m; ++j) lens(j) = increments.col(j).norm();
    const double total = lens.sum();

    Eigen::VectorXd t(m + 1);
    t(0) = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
        const double dt = total > 0.0 ? lens(j) / total : 1.0 / static_cast<double>(m);
        t(j + 1) = t(j) + std::max(dt, 1e-9 / static_cast<double>(m));
    }
    t /= t(m);
    t(m) = 1.0;
    return {t, pts};
}

PiecewiseLinearPath reverse(const PiecewiseLinearPath& x) {
    const Eigen::Index n = x.times.size();
    Eigen::VectorXd t(n);
    Eigen::MatrixXd p(x.points.rows(), n);
    const double a = x.t_begin(), b = x.t_end();
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i) = a + b - x.times(n - 1 - i);
        p.col(i) = x.points.col(n - 1 - i);
    }
    return {t, p};
}

PiecewiseLinearPath scale(double lambda, const PiecewiseLinearPath& x) {
    return {x.times, lambda * x.points};
}

PiecewiseLinearPath concat(const PiecewiseLinearPath& a, const PiecewiseLinearPath& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("concat: dimension mismatch");
    const Eigen::Index na = a.times.size(), nb = b.times.size();
    Eigen::VectorXd t(na + nb - 1);
    Eigen::MatrixXd p(a.points.rows(), na + nb - 1);
    t.head(na) = a.times;
    p.leftCols(na) = a.points;
    const Eigen::VectorXd shift = a.points.col(na - 1) - b.points.col(0);
    for (Eigen::Index i = 1; i < nb; ++i) {
        t(na - 1 + i) = a.t_end() + (b.times(i) - b.t_begin());
        p.col(na - 1 + i) = b.points.col(i) + shift;
    }
    return {t, p};
}

GroupElement segment_signature(const Eigen::VectorXd& delta, const AlgebraShape& shape) {
    if (delta.size() != shape.d) throw std::invalid_argument("segment_signature: bad dimension");
    // exp of a level-1 element: level k is delta^{(x)k} / k!
    GroupElement g(shape);
    if (shape.N >= 1) g.level(1) = delta;
    for (int k = 2; k <= shape.N; ++k) {
        const auto& prev = g.level(k - 1);
        auto& cur = g.level(k);
        const double inv_k = 1.0 / static_cast<double>(k);
        for (Eigen::Index r = 0; r < prev.size(); ++r) {
            cur.segment(r * shape.d, shape.d) = (prev(r) * inv_k) * delta;
        }
    }
    return g;
}

GroupElement path_signature(const PiecewiseLinearPath& x, double s, double t,
                            const AlgebraShape& shape) {
    if (s > t) throw std::invalid_argument("path_signature: need s <= t");
    if (x.dim() != shape.d) throw std::invalid_argument("path_signature: dimension mismatch");
    GroupElement acc = unit(shape);
    if (s == t) return acc;
    bool first = true;
    for (Eigen::Index i = 0; i + 1 < x.times.size(); ++i) {
        const double lo = std::max(s, x.times(i));
        const double hi = std::min(t, x.times(i + 1));
        if (hi <= lo) continue;
        const double frac = (hi - lo) / (x.times(i + 1) - x.times(i));
        const Eigen::VectorXd delta = frac * (x.points.col(i + 1) - x.points.col(i));
        if (first) {
            acc = segment_signature(delta, shape);
            first = false;
        } else {
            acc = multiply(acc, segment_signature(delta, shape));
        }
    }
    return acc;
}

GroupElement path_signature(const PiecewiseLinearPath& x, const AlgebraShape& shape) {
    return path_signature(x, x.t_begin(), x.t_end(), shape);
}

}  // namespace rplab
