#pragma once

#include "rplab/sampling.hpp"

namespace rplab::testutil {

using rplab::random_group_like;
using rplab::random_lie_series;

inline double max_abs_diff(const TensorSeries& a, const TensorSeries& b) {
    double m = 0.0;
    for (int k = 0; k <= a.shape.N; ++k) {
        m = std::max(m, (a.levels[k] - b.levels[k]).cwiseAbs().maxCoeff());
    }
    return m;
}

inline double rel_diff(const TensorSeries& a, const TensorSeries& b) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= a.shape.N; ++k) {
        num = std::max(num, (a.levels[k] - b.levels[k]).norm());
        den = std::max({den, a.levels[k].norm(), b.levels[k].norm()});
    }
    return den == 0.0 ? num : num / den;
}

}  // namespace rplab::testutil
