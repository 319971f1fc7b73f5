#pragma once

// Piecewise-linear paths in R^d and their step-N signatures.  A straight
// segment has signature exp(increment); signatures over longer intervals
// are the ordered tensor products of the segment signatures (Chen).

#include <Eigen/Dense>

#include "rplab/algebra.hpp"

namespace rplab {

/// Ordered breakpoints with strictly increasing timestamps.  Columns of
/// `points` are the breakpoints, one per entry of `times`.
struct PiecewiseLinearPath {
    Eigen::VectorXd times;   // m+1 timestamps
    Eigen::MatrixXd points;  // d x (m+1)

    PiecewiseLinearPath() = default;
    PiecewiseLinearPath(Eigen::VectorXd t, Eigen::MatrixXd p);

    [[nodiscard]] int dim() const { return static_cast<int>(points.rows()); }
    [[nodiscard]] Eigen::Index segment_count() const { return times.size() - 1; }
    [[nodiscard]] double t_begin() const { return times(0); }
    [[nodiscard]] double t_end() const { return times(times.size() - 1); }

    /// Linear interpolation; clamps outside [t_begin, t_end].
    [[nodiscard]] Eigen::VectorXd position(double t) const;

    /// Total variation sum |x_{i+1} - x_i| over [s, t] (defaults: whole path).
    [[nodiscard]] double length() const;
    [[nodiscard]] double length(double s, double t) const;
};

/// Path from a list of segment increments laid out on [0,1] with
/// breakpoints spaced proportionally to segment length (uniform when all
/// lengths vanish); starts at `origin`.
PiecewiseLinearPath path_from_increments(const Eigen::MatrixXd& increments,
                                         const Eigen::VectorXd& origin);

PiecewiseLinearPath reverse(const PiecewiseLinearPath& x);
PiecewiseLinearPath scale(double lambda, const PiecewiseLinearPath& x);
PiecewiseLinearPath concat(const PiecewiseLinearPath& a, const PiecewiseLinearPath& b);

/// Signature of one straight segment: exp of the level-1 increment.
GroupElement segment_signature(const Eigen::VectorXd& delta, const AlgebraShape& shape);

/// Step-N signature over [s, t]; s, t need not be breakpoints.
GroupElement path_signature(const PiecewiseLinearPath& x, double s, double t,
                            const AlgebraShape& shape);

/// Signature over the whole parameter interval.
GroupElement path_signature(const PiecewiseLinearPath& x, const AlgebraShape& shape);

}  // namespace rplab
