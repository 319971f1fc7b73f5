#pragma once

// Random algebra elements and paths for property suites and experiments.

#include "rplab/algebra.hpp"
#include "rplab/path.hpp"
#include "rplab/rng.hpp"

namespace rplab {

inline LieSeries random_lie_series(const AlgebraShape& shape, RngStream& rng,
                                   double amplitude = 1.0) {
    LieSeries l(shape);
    for (int k = 1; k <= shape.N; ++k) {
        for (Eigen::Index j = 0; j < l.level(k).size(); ++j) {
            l.level(k)(j) = rng.uniform(-amplitude, amplitude);
        }
    }
    return l;
}

/// exp of a random Lie polynomial in the generators and their nested
/// brackets; group-like by construction.
inline GroupElement random_group_like(const AlgebraShape& shape, RngStream& rng,
                                      double amplitude = 1.0) {
    LieSeries acc(shape);
    std::vector<LieSeries> basis;
    basis.reserve(static_cast<std::size_t>(shape.d));
    for (int i = 0; i < shape.d; ++i) basis.push_back(generator(shape, i));
    for (int i = 0; i < shape.d; ++i) {
        acc = LieSeries(acc.series + rng.uniform(-amplitude, amplitude) * basis[i].series);
    }
    const int n_brackets = 2 * shape.N * shape.d;
    for (int b = 0; b < n_brackets; ++b) {
        LieSeries w = basis[rng.below(static_cast<std::uint64_t>(shape.d))];
        const int depth = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(shape.N)));
        for (int j = 1; j < depth; ++j) {
            w = lie_bracket(basis[rng.below(static_cast<std::uint64_t>(shape.d))], w);
        }
        acc = LieSeries(acc.series + rng.uniform(-amplitude, amplitude) * w.series);
    }
    return exp(acc);
}

inline PiecewiseLinearPath random_piecewise_linear_path(int d, int segments, RngStream& rng,
                                                        double amplitude = 1.0) {
    Eigen::MatrixXd inc(d, segments);
    for (int j = 0; j < segments; ++j) {
        for (int i = 0; i < d; ++i) inc(i, j) = rng.uniform(-amplitude, amplitude);
    }
    return path_from_increments(inc, Eigen::VectorXd::Zero(d));
}

}  // namespace rplab
