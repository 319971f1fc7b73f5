#pragma once

// Grid representation of a G^N-valued path on a dissection of [0,1]:
// one group increment per cell, Chen-consistent with the generating
// skeleton when one is attached.  Hoelder quantities use the
// homogeneous norm as the computable surrogate for the CC norm; all
// rate experiments fit exponents, which do not see the norm swap.

#include <optional>
#include <vector>

#include "rplab/algebra.hpp"
#include "rplab/path.hpp"

namespace rplab {

struct RoughPathGrid {
    AlgebraShape shape;
    Eigen::VectorXd times;                 // n+1 dissection points
    std::vector<GroupElement> increments;  // n cell increments x_{t_i, t_{i+1}}
    double p = 1.0;                        // roughness parameter, >= 1
    std::optional<PiecewiseLinearPath> skeleton;

    [[nodiscard]] Eigen::Index cell_count() const { return times.size() - 1; }
};

/// Grid over `times` whose increments are signatures of `skeleton`.
RoughPathGrid make_grid(const PiecewiseLinearPath& skeleton, const Eigen::VectorXd& times,
                        const AlgebraShape& shape, double p);

/// Grid over a uniform n-cell dissection of the skeleton's interval.
RoughPathGrid make_uniform_grid(const PiecewiseLinearPath& skeleton, Eigen::Index cells,
                                const AlgebraShape& shape, double p);

/// Running products P_i = x_{t_0, t_i}; P_0 = e.  The increment over
/// [t_i, t_j] is inverse(P_i) (x) P_j.
std::vector<GroupElement> prefix_products(const RoughPathGrid& x);

/// Increment over [times(i), times(j)] as the ordered product of cells.
GroupElement grid_increment(const RoughPathGrid& x, Eigen::Index i, Eigen::Index j);

/// Lyons lift to depth N, available for skeleton-backed grids only.
/// Projection back to the original depth reproduces the increments
/// bit-exactly.
RoughPathGrid lift(const RoughPathGrid& x, int N);

/// sup over grid pairs s < t of |||x_{s,t}||| / (t-s)^{1/p}.
double hoelder_norm(const RoughPathGrid& x);

/// Same sup restricted to pairs with t - s <= delta; decreasing in delta.
double small_scale_modulus(const RoughPathGrid& x, double delta);

/// sup over grid pairs of |||x_{s,t}^{-1} (x) y_{s,t}||| / (t-s)^{1/p};
/// requires identical dissections and shapes.
double hoelder_distance(const RoughPathGrid& x, const RoughPathGrid& y);

/// sup over grid pairs of the unweighted increment distance.
double sup_distance(const RoughPathGrid& x, const RoughPathGrid& y);

/// Largest Chen defect |x_{i,i+2} - x_{i,i+1} (x) x_{i+1,i+2}| over the
/// grid (coefficientwise max), using skeleton-free products only.
double chen_defect(const RoughPathGrid& x);

}  // namespace rplab
