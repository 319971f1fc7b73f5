#include "rplab/brownian.hpp"

#include <cmath>
#include <stdexcept>

namespace rplab {

EBMSample ebm_sample(int d, int fine_level, double p, std::uint64_t seed, std::uint64_t stream) {
    if (fine_level < 10) throw std::invalid_argument("ebm_sample: need fine_level >= 10");
    if (d < 2) throw std::invalid_argument("ebm_sample: need d >= 2 for a nontrivial area");
    if (!(p > 2.0 && p < 3.0)) throw std::invalid_argument("ebm_sample: need p in (2,3)");

    const Eigen::Index n = Eigen::Index(1) << fine_level;
    const double mesh = 1.0 / static_cast<double>(n);
    const double sd = std::sqrt(mesh);

    RngStream rng(seed, stream);
    Eigen::VectorXd t(n + 1);
    Eigen::MatrixXd pts(d, n + 1);
    pts.col(0).setZero();
    t(0) = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        t(i + 1) = static_cast<double>(i + 1) * mesh;
        for (int c = 0; c < d; ++c) pts(c, i + 1) = pts(c, i) + sd * rng.normal();
    }
    t(n) = 1.0;

    EBMSample sample;
    sample.fine_skeleton = PiecewiseLinearPath(t, pts);
    sample.grid = make_grid(sample.fine_skeleton, t, AlgebraShape(d, 2), p);
    sample.seed = seed;
    sample.p = p;
    sample.fine_level = fine_level;
    return sample;
}

RoughPathGrid coarse_grid(const EBMSample& sample, Eigen::Index cells) {
    const Eigen::Index fine_cells = sample.fine_skeleton.times.size() - 1;
    if (cells < 1 || fine_cells % cells != 0) {
        throw std::invalid_argument("coarse_grid: cells must divide the fine cell count");
    }
    const Eigen::Index stride = fine_cells / cells;
    Eigen::VectorXd t(cells + 1);
    for (Eigen::Index i = 0; i <= cells; ++i) t(i) = sample.fine_skeleton.times(i * stride);
    return make_grid(sample.fine_skeleton, t, sample.grid.shape, sample.p);
}

DyadicApproximation dyadic_approximation(const EBMSample& sample, int n) {
    if (n < 0 || n > sample.fine_level) {
        throw std::invalid_argument("dyadic_approximation: level must not exceed the skeleton");
    }
    const Eigen::Index cells = Eigen::Index(1) << n;
    const Eigen::Index stride = (sample.fine_skeleton.times.size() - 1) / cells;
    Eigen::VectorXd t(cells + 1);
    Eigen::MatrixXd pts(sample.fine_skeleton.dim(), cells + 1);
    for (Eigen::Index i = 0; i <= cells; ++i) {
        t(i) = sample.fine_skeleton.times(i * stride);
        pts.col(i) = sample.fine_skeleton.points.col(i * stride);
    }
    DyadicApproximation out;
    out.level = n;
    out.path = PiecewiseLinearPath(t, pts);
    out.lifted = make_grid(out.path, t, sample.grid.shape, sample.p);
    return out;
}

}  // namespace rplab
