#pragma once

// Enhanced Brownian motion at desk scale: a Brownian skeleton on a fine
// dyadic dissection, its depth-2 lift (the only rough-driver source the
// experiments need), and the nested dyadic piecewise-linear
// approximations whose lifts converge to it.

#include <cstdint>

#include "rplab/rng.hpp"
#include "rplab/rough_path.hpp"

namespace rplab {

struct EBMSample {
    PiecewiseLinearPath fine_skeleton;  // Brownian values on the fine dyadic grid
    RoughPathGrid grid;                 // depth-2 increments over the fine cells
    std::uint64_t seed = 0;
    double p = 2.5;  // in (2,3)
    int fine_level = 12;
};

/// Gaussian increments with variance equal to the mesh on the level
/// `fine_level` dyadic dissection of [0,1]; reproducible from (seed,
/// stream).  Requires fine_level >= 10 and d >= 2.
EBMSample ebm_sample(int d, int fine_level, double p, std::uint64_t seed,
                     std::uint64_t stream = 0);

/// Depth-2 grid over a coarser dissection of `cells` cells (must divide
/// the fine cell count); increments are skeleton signatures, so the grid
/// is Chen-consistent by construction.
RoughPathGrid coarse_grid(const EBMSample& sample, Eigen::Index cells);

struct DyadicApproximation {
    int level = 0;                  // n: dissection D_n with 2^n cells
    PiecewiseLinearPath path;       // skeleton interpolated at D_n
    RoughPathGrid lifted;           // its depth-2 lift on D_n
};

/// Piecewise-linear interpolation at the dyadic dissection D_n; exact at
/// the knots.  Requires n <= fine_level.
DyadicApproximation dyadic_approximation(const EBMSample& sample, int n);

}  // namespace rplab
