#pragma once

// Constructive counterpart of the geodesic machinery on G^N(R^d): build
// a piecewise-linear path with a prescribed signature, shorten it under
// a signature constraint, and certify the Carnot-Caratheodory norm from
// both sides.  The exact norm is computed only on the step-2 group over
// R^2, where the minimizers are circular arcs; everywhere else the
// artifact reports an interval [lower, upper].

#include <vector>

#include "rplab/algebra.hpp"
#include "rplab/path.hpp"
#include "rplab/rough_path.hpp"

namespace rplab {

struct GeodesicFamilyConfig {
    double K = 3.0;      // length budget multiplier, >= 1
    int m = 32;          // segments per optimized path
    double tol = 1e-6;   // signature-matching tolerance (max coefficient defect)
    int penalty_rounds = 5;
    double penalty_start = 1e4;  // quadratic penalty weight, x10 per round
    int max_inner = 150;         // quasi-Newton iterations per round
};

/// Two-sided CC-norm certificate; `path` is the tol-feasible witness for
/// the upper bound.
struct CCBounds {
    double lower = 0.0;
    double upper = 0.0;
    PiecewiseLinearPath path;
    int segments = 0;
    double defect = 0.0;  // achieved max coefficient defect of the witness
};

/// Path on [0,1] whose signature matches g to 1e-8 per coefficient.
/// Level 1 is matched by a single segment; each higher-level defect is
/// cancelled by scaled rectangle (iterated group commutator) words, with
/// a fixed-point loop absorbing clipped and higher-order residue.
PiecewiseLinearPath chow_decompose(const GroupElement& g);

/// max_k (k! |g^k|)^{1/k}: valid lower bound for the CC norm, from the
/// simplex volume bound |g^k| <= (path length)^k / k!.
double cc_norm_lower(const GroupElement& g);

/// Locally minimal length over m-segment paths with signature pinned to
/// g by an escalating quadratic penalty; seeded at chow_decompose (or at
/// the circular-arc witness on the step-2 group over R^2).
CCBounds cc_norm_upper(const GroupElement& g, const GeodesicFamilyConfig& cfg = {});

/// Exact CC norm on the step-2 group over R^2.  Coordinates: w = level-1
/// increment, a = antisymmetric part of log at level 2.  a = 0 gives
/// |w|; w = 0 gives 2 sqrt(pi |a|); the mixed case solves the circular
/// arc relation by bisection on the arc angle in (0, 2 pi).
double heisenberg_cc_norm(const GroupElement& g);

/// Circular-arc polyline from 0 to w enclosing segment-area a, sampled
/// with m segments; the exact minimizer's discretization.
PiecewiseLinearPath heisenberg_arc_path(const Eigen::Vector2d& w, double a, int m);

/// Per-cell result of the geodesic family construction.
struct GeodesicCell {
    PiecewiseLinearPath path;  // parametrized over the cell interval
    double length = 0.0;
    double budget = 0.0;
    bool within_budget = true;
    double defect = 0.0;
};

/// For each grid cell [s,t], a short path with signature x_{s,t} and
/// length within cfg.K * hoelder_norm(x) * (t-s)^{1/p}; cells that miss
/// the budget are flagged, not fatal.
std::vector<GeodesicCell> geodesic_family(const RoughPathGrid& x,
                                          const GeodesicFamilyConfig& cfg = {});

/// Signature of a list of straight segments given as matrix columns.
GroupElement signature_of_increments(const Eigen::MatrixXd& increments,
                                     const AlgebraShape& shape);

}  // namespace rplab
