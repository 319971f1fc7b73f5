#pragma once

// Randomized property suites over the algebra and signature layers:
// group axioms, exp/log round trips, dilation homomorphism, the
// right-bracketing membership test, Chen multiplicativity with random
// split points, time reversal, and dilation covariance of signatures.

#include <cstdint>
#include <string>
#include <vector>

namespace rplab {

struct CheckResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;  // largest observed defect (or failure count, see name)
    double tolerance = 0.0;
};

/// Runs `cases` randomized cases spread over d in {1..d_max}, N in
/// {1..N_max}.  Tolerances: 1e-12 relative, 1e-8 for group-likeness.
std::vector<CheckResult> algebra_selfcheck(int d_max, int N_max, long cases, std::uint64_t seed);

/// Chen identity, reversal, scaling, and group-likeness of signatures
/// over random piecewise-linear paths with random split triples.
std::vector<CheckResult> signature_selfcheck(int d_max, int N_max, long cases,
                                             std::uint64_t seed);

}  // namespace rplab
