#pragma once

// Iterated first-order differential operators V_{i_1}...V_{i_k} H and
// the step-N one-step increment: the contraction of those operator
// values against the level-k coefficient blocks of a group element.

#include <utility>
#include <vector>

#include "rplab/algebra.hpp"
#include "rplab/vector_field.hpp"

namespace rplab {

struct EulerIncrement {
    Eigen::VectorXd value;
    std::vector<Eigen::VectorXd> per_level;  // filled when requested; sums to value
};

/// V_{i_1} ... V_{i_k} H(y): operators applied right to left, so the
/// innermost evaluation is V_{i_k} and each step contracts one more
/// derivative.  Needs field derivatives up to order k-1.
Eigen::VectorXd iterated_apply(const VectorFieldFamily& V, const std::vector<int>& indices,
                               const Eigen::VectorXd& y);

/// sum_{k=1..N} sum_w V_{w_1}...V_{w_k} H(y) g^{k,w}.
EulerIncrement euler_increment(const VectorFieldFamily& V, int N, const GroupElement& g,
                               const Eigen::VectorXd& y, bool with_breakdown = false);

/// Word values V_{w_1}...V_{w_k} H(y) tabulated once for a fixed base
/// point; the increment then reduces to dot products per level.
class EulerContraction {
  public:
    EulerContraction(const VectorFieldFamily& V, int N, const Eigen::VectorXd& y);

    [[nodiscard]] Eigen::VectorXd apply(const GroupElement& g) const;

  private:
    int N_;
    std::vector<Eigen::MatrixXd> level_tables_;  // e x d^k, level k at index k-1
};

/// Gap |I[y] - I[y~]| together with the dominating empirical bound
/// C |y - y~| (n + n^N), n the homogeneous norm of g.  C sums sampled
/// operator Lipschitz constants along the segment between the two
/// starting points (inflated 25%); throws if the gap escapes the bound.
std::pair<double, double> initial_point_sensitivity(const VectorFieldFamily& V, int N,
                                                    const GroupElement& g,
                                                    const Eigen::VectorXd& y,
                                                    const Eigen::VectorXd& y_tilde);

}  // namespace rplab
