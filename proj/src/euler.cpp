#include "rplab/euler.hpp"

#include <cmath>
#include <stdexcept>

namespace rplab {

namespace {

// D^{|dirs|} W_j(y)[dirs] for the operator chain W_1 = V_{i_k},
// W_{j+1} = DW_j * V_{i_{k-j}}, by the Leibniz rule over direction
// subsets:
//   D^r W_{j+1}[u_1..u_r] =
//     sum_{S subset [r]} D^{|S|+1} W_j[u_S, D^{r-|S|} V[u_{S^c}]].
Eigen::VectorXd chain_derivative(const VectorFieldFamily& V, const std::vector<int>& indices,
                                 int j, const Eigen::VectorXd& y,
                                 std::vector<Eigen::VectorXd>& dirs) {
    const int k = static_cast<int>(indices.size());
    if (j == 1) {
        return V.derivative(indices[static_cast<std::size_t>(k - 1)], y, dirs);
    }
    const int field = indices[static_cast<std::size_t>(k - j)];
    const int r = static_cast<int>(dirs.size());
    Eigen::VectorXd out = Eigen::VectorXd::Zero(V.state_dim());
    std::vector<Eigen::VectorXd> sub;
    std::vector<Eigen::VectorXd> complement;
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
        sub.clear();
        complement.clear();
        for (int t = 0; t < r; ++t) {
            if (mask & (1u << t)) {
                sub.push_back(dirs[static_cast<std::size_t>(t)]);
            } else {
                complement.push_back(dirs[static_cast<std::size_t>(t)]);
            }
        }
        Eigen::VectorXd w = V.derivative(field, y, complement);
        if (w.isZero(0.0)) continue;
        sub.push_back(std::move(w));
        out += chain_derivative(V, indices, j - 1, y, sub);
    }
    return out;
}

}  // namespace

Eigen::VectorXd iterated_apply(const VectorFieldFamily& V, const std::vector<int>& indices,
                               const Eigen::VectorXd& y) {
    const int k = static_cast<int>(indices.size());
    if (k < 1) throw std::invalid_argument("iterated_apply: empty index word");
    if (k - 1 > V.order()) {
        throw std::invalid_argument("iterated_apply: insufficient derivative order");
    }
    for (int i : indices) {
        if (i < 0 || i >= V.driver_dim()) {
            throw std::invalid_argument("iterated_apply: index out of range");
        }
    }
    std::vector<Eigen::VectorXd> no_dirs;
    return chain_derivative(V, indices, k, y, no_dirs);
}

EulerIncrement euler_increment(const VectorFieldFamily& V, int N, const GroupElement& g,
                               const Eigen::VectorXd& y, bool with_breakdown) {
    if (g.shape().N < N) throw std::invalid_argument("euler_increment: element depth below N");
    if (g.shape().d != V.driver_dim()) {
        throw std::invalid_argument("euler_increment: driver dimension mismatch");
    }
    if (V.order() < N - 1) {
        throw std::invalid_argument("euler_increment: field order below N-1");
    }
    EulerIncrement out;
    out.value = Eigen::VectorXd::Zero(V.state_dim());
    if (with_breakdown) out.per_level.assign(static_cast<std::size_t>(N), out.value);

    const int d = g.shape().d;
    for (int k = 1; k <= N; ++k) {
        const auto& block = g.level(k);
        if (block.isZero(0.0)) continue;
        Eigen::VectorXd level_sum = Eigen::VectorXd::Zero(V.state_dim());
        std::vector<int> word(static_cast<std::size_t>(k), 0);
        for (Eigen::Index idx = 0; idx < block.size(); ++idx) {
            if (block(idx) != 0.0) {
                level_sum += block(idx) * iterated_apply(V, word, y);
            }
            int pos = k - 1;
            while (pos >= 0 && word[static_cast<std::size_t>(pos)] == d - 1) {
                word[static_cast<std::size_t>(pos--)] = 0;
            }
            if (pos >= 0) ++word[static_cast<std::size_t>(pos)];
        }
        out.value += level_sum;
        if (with_breakdown) out.per_level[static_cast<std::size_t>(k - 1)] = level_sum;
    }
    return out;
}

EulerContraction::EulerContraction(const VectorFieldFamily& V, int N, const Eigen::VectorXd& y)
    : N_(N) {
    const int d = V.driver_dim();
    for (int k = 1; k <= N; ++k) {
        Eigen::Index cols = 1;
        for (int j = 0; j < k; ++j) cols *= d;
        Eigen::MatrixXd table(V.state_dim(), cols);
        std::vector<int> word(static_cast<std::size_t>(k), 0);
        for (Eigen::Index idx = 0; idx < cols; ++idx) {
            table.col(idx) = iterated_apply(V, word, y);
            int pos = k - 1;
            while (pos >= 0 && word[static_cast<std::size_t>(pos)] == d - 1) {
                word[static_cast<std::size_t>(pos--)] = 0;
            }
            if (pos >= 0) ++word[static_cast<std::size_t>(pos)];
        }
        level_tables_.push_back(std::move(table));
    }
}

Eigen::VectorXd EulerContraction::apply(const GroupElement& g) const {
    if (g.shape().N < N_) throw std::invalid_argument("EulerContraction: element depth below N");
    Eigen::VectorXd out = Eigen::VectorXd::Zero(level_tables_[0].rows());
    for (int k = 1; k <= N_; ++k) {
        out += level_tables_[static_cast<std::size_t>(k - 1)] * g.level(k);
    }
    return out;
}

std::pair<double, double> initial_point_sensitivity(const VectorFieldFamily& V, int N,
                                                    const GroupElement& g,
                                                    const Eigen::VectorXd& y,
                                                    const Eigen::VectorXd& y_tilde) {
    const double gap =
        (euler_increment(V, N, g, y).value - euler_increment(V, N, g, y_tilde).value).norm();

    // sampled operator Lipschitz constants along the segment y -> y~
    const int d = V.driver_dim();
    const int e = V.state_dim();
    const int probes = 33;
    double lip_sum = 0.0;
    for (int k = 1; k <= N; ++k) {
        std::vector<int> word(static_cast<std::size_t>(k), 0);
        while (true) {
            double lip_word = 0.0;
            for (int s = 0; s < probes; ++s) {
                const double w = probes == 1 ? 0.0 : static_cast<double>(s) / (probes - 1);
                const Eigen::VectorXd p = (1.0 - w) * y + w * y_tilde;
                // operator-norm bound via the Frobenius norm of the Jacobian
                double frob2 = 0.0;
                for (int c = 0; c < e; ++c) {
                    std::vector<Eigen::VectorXd> dir{Eigen::VectorXd::Unit(e, c)};
                    frob2 += chain_derivative(V, word, k, p, dir).squaredNorm();
                }
                lip_word = std::max(lip_word, std::sqrt(frob2));
            }
            lip_sum += lip_word;
            int pos = k - 1;
            while (pos >= 0 && word[static_cast<std::size_t>(pos)] == d - 1) {
                word[static_cast<std::size_t>(pos--)] = 0;
            }
            if (pos < 0) break;
            ++word[static_cast<std::size_t>(pos)];
        }
    }
    const double C = 1.25 * lip_sum;
    const double n = homogeneous_norm(g);
    const double bound = C * (y - y_tilde).norm() * (n + std::pow(n, N));
    if (gap > bound + 1e-12) {
        throw std::runtime_error("initial_point_sensitivity: gap escaped the sampled bound");
    }
    return {gap, bound};
}

}  // namespace rplab
