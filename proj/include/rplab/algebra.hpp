#pragma once

// Truncated tensor algebra T^(N)(R^d) over a scalar type, the group
// T_1^N of series with unit scalar part, and the free nilpotent group
// G^N(R^d) sitting inside it.  Level-k coefficient blocks are dense,
// indexed by words (i_1,...,i_k) in row-major order with i_1 the most
// significant digit.  All operations are pure free functions; values are
// freely copyable and thread-safe to share read-only.

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace rplab {

/// Ambient dimension d and truncation depth N of T^(N)(R^d).
struct AlgebraShape {
    int d = 1;
    int N = 1;

    AlgebraShape() = default;
    AlgebraShape(int d_, int N_) : d(d_), N(N_) {
        if (d < 1 || N < 1) throw std::invalid_argument("AlgebraShape: need d >= 1, N >= 1");
    }

    friend bool operator==(const AlgebraShape&, const AlgebraShape&) = default;

    /// d^k, the number of coefficients at level k.
    [[nodiscard]] Eigen::Index level_size(int k) const {
        Eigen::Index s = 1;
        for (int j = 0; j < k; ++j) s *= d;
        return s;
    }
};

/// Dense coefficients of an element of T^(N)(R^d), levels 0..N.
template <typename Scalar>
struct TensorSeriesT {
    using Block = Eigen::Vector<Scalar, Eigen::Dynamic>;

    AlgebraShape shape;
    std::vector<Block> levels;  // levels[k] has shape.level_size(k) entries

    TensorSeriesT() = default;
    explicit TensorSeriesT(const AlgebraShape& s) : shape(s) {
        levels.reserve(s.N + 1);
        for (int k = 0; k <= s.N; ++k) levels.push_back(Block::Zero(s.level_size(k)));
    }

    Scalar& scalar_part() { return levels[0](0); }
    [[nodiscard]] Scalar scalar_part() const { return levels[0](0); }
};

/// Element of T_1^N: scalar part pinned to 1.  Group-likeness (membership
/// in G^N) is a testable property, not enforced by the type.
template <typename Scalar>
struct GroupElementT {
    TensorSeriesT<Scalar> series;

    GroupElementT() = default;
    explicit GroupElementT(const AlgebraShape& s) : series(s) { series.scalar_part() = Scalar(1); }
    explicit GroupElementT(TensorSeriesT<Scalar> t) : series(std::move(t)) {
        series.scalar_part() = Scalar(1);
    }

    [[nodiscard]] const AlgebraShape& shape() const { return series.shape; }
    [[nodiscard]] const typename TensorSeriesT<Scalar>::Block& level(int k) const {
        return series.levels[k];
    }
    typename TensorSeriesT<Scalar>::Block& level(int k) { return series.levels[k]; }
};

/// Element of T_0^N: scalar part pinned to 0.  Carries log coordinates
/// and bracket arguments.
template <typename Scalar>
struct LieSeriesT {
    TensorSeriesT<Scalar> series;

    LieSeriesT() = default;
    explicit LieSeriesT(const AlgebraShape& s) : series(s) {}
    explicit LieSeriesT(TensorSeriesT<Scalar> t) : series(std::move(t)) {
        series.scalar_part() = Scalar(0);
    }

    [[nodiscard]] const AlgebraShape& shape() const { return series.shape; }
    [[nodiscard]] const typename TensorSeriesT<Scalar>::Block& level(int k) const {
        return series.levels[k];
    }
    typename TensorSeriesT<Scalar>::Block& level(int k) { return series.levels[k]; }
};

using TensorSeries = TensorSeriesT<double>;
using GroupElement = GroupElementT<double>;
using LieSeries = LieSeriesT<double>;

namespace detail {

inline void require_same_shape(const AlgebraShape& a, const AlgebraShape& b) {
    if (!(a == b)) throw std::invalid_argument("algebra shape mismatch");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// linear structure
// ---------------------------------------------------------------------------

template <typename S>
TensorSeriesT<S> operator+(const TensorSeriesT<S>& a, const TensorSeriesT<S>& b) {
    detail::require_same_shape(a.shape, b.shape);
    TensorSeriesT<S> out = a;
    for (int k = 0; k <= a.shape.N; ++k) out.levels[k] += b.levels[k];
    return out;
}

template <typename S>
TensorSeriesT<S> operator-(const TensorSeriesT<S>& a, const TensorSeriesT<S>& b) {
    detail::require_same_shape(a.shape, b.shape);
    TensorSeriesT<S> out = a;
    for (int k = 0; k <= a.shape.N; ++k) out.levels[k] -= b.levels[k];
    return out;
}

template <typename S>
TensorSeriesT<S> operator*(S c, const TensorSeriesT<S>& a) {
    TensorSeriesT<S> out = a;
    for (auto& blk : out.levels) blk *= c;
    return out;
}

// ---------------------------------------------------------------------------
// truncated tensor multiplication
// ---------------------------------------------------------------------------

/// (a (x) b)^k = sum_{i=0..k} a^i (x) b^{k-i}, truncated beyond level N.
template <typename S>
TensorSeriesT<S> tensor_product(const TensorSeriesT<S>& a, const TensorSeriesT<S>& b) {
    detail::require_same_shape(a.shape, b.shape);
    const AlgebraShape& sh = a.shape;
    TensorSeriesT<S> out(sh);
    for (int k = 0; k <= sh.N; ++k) {
        auto& dst = out.levels[k];
        for (int i = 0; i <= k; ++i) {
            const auto& lhs = a.levels[i];
            const auto& rhs = b.levels[k - i];
            const Eigen::Index nr = rhs.size();
            if (i == 0) {
                dst += a.levels[0](0) * rhs;
            } else if (i == k) {
                dst += b.levels[0](0) * lhs;
            } else {
                for (Eigen::Index r = 0; r < lhs.size(); ++r) {
                    if (lhs(r) != S(0)) dst.segment(r * nr, nr) += lhs(r) * rhs;
                }
            }
        }
    }
    return out;
}

template <typename S>
GroupElementT<S> multiply(const GroupElementT<S>& a, const GroupElementT<S>& b) {
    return GroupElementT<S>(tensor_product(a.series, b.series));
}

/// Neutral element e = 1 + 0 + ... + 0.
template <typename S = double>
GroupElementT<S> unit(const AlgebraShape& shape) {
    return GroupElementT<S>(shape);
}

/// (1 + u)^{-1} = 1 - u + u^{(x)2} - ..., exact under nilpotency.
template <typename S>
GroupElementT<S> inverse(const GroupElementT<S>& g) {
    const AlgebraShape& sh = g.shape();
    TensorSeriesT<S> u = g.series;
    u.scalar_part() = S(0);
    TensorSeriesT<S> acc = unit<S>(sh).series;
    for (int j = 0; j < sh.N; ++j) {
        acc = unit<S>(sh).series - tensor_product(u, acc);
    }
    return GroupElementT<S>(acc);
}

// ---------------------------------------------------------------------------
// exp / log / dilation
// ---------------------------------------------------------------------------

/// exp(l) = 1 + l + l^{(x)2}/2! + ...; finite sum by nilpotency.
template <typename S>
GroupElementT<S> exp(const LieSeriesT<S>& l) {
    const AlgebraShape& sh = l.shape();
    TensorSeriesT<S> acc = unit<S>(sh).series;
    for (int k = sh.N; k >= 1; --k) {
        acc = unit<S>(sh).series + (S(1) / S(k)) * tensor_product(l.series, acc);
    }
    return GroupElementT<S>(acc);
}

/// log(1 + u) = u - u^2/2 + u^3/3 - ...; finite sum by nilpotency.
template <typename S>
LieSeriesT<S> log(const GroupElementT<S>& g) {
    const AlgebraShape& sh = g.shape();
    TensorSeriesT<S> u = g.series;
    u.scalar_part() = S(0);
    TensorSeriesT<S> power = u;
    TensorSeriesT<S> acc = u;
    S sign(1);
    for (int j = 2; j <= sh.N; ++j) {
        power = tensor_product(power, u);
        sign = -sign;
        acc = acc + (sign / S(j)) * power;
    }
    return LieSeriesT<S>(acc);
}

/// delta_lambda: level k scaled by lambda^k.
template <typename S>
GroupElementT<S> dilate(S lambda, const GroupElementT<S>& g) {
    GroupElementT<S> out = g;
    S pow(1);
    for (int k = 1; k <= g.shape().N; ++k) {
        pow *= lambda;
        out.level(k) *= pow;
    }
    return out;
}

/// max_{k=1..N} |g^k|^{1/k} with per-level Frobenius norm; continuous,
/// vanishes only at e, homogeneous under dilation.
template <typename S>
S homogeneous_norm(const GroupElementT<S>& g) {
    using std::pow;
    S best(0);
    for (int k = 1; k <= g.shape().N; ++k) {
        const S nk = g.level(k).norm();
        const S cand = (k == 1) ? nk : S(pow(nk, S(1) / S(k)));
        if (cand > best) best = cand;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Lie structure and group-likeness
// ---------------------------------------------------------------------------

template <typename S>
LieSeriesT<S> lie_bracket(const LieSeriesT<S>& a, const LieSeriesT<S>& b) {
    return LieSeriesT<S>(tensor_product(a.series, b.series) -
                         tensor_product(b.series, a.series));
}

/// First-letter coordinate vector e_i as a Lie series.
template <typename S = double>
LieSeriesT<S> generator(const AlgebraShape& shape, int i) {
    if (i < 0 || i >= shape.d) throw std::invalid_argument("generator index out of range");
    LieSeriesT<S> out(shape);
    out.level(1)(i) = S(1);
    return out;
}

/// Right-bracketing operator on a homogeneous degree-k block:
/// e_{i1} (x) ... (x) e_{ik}  ->  [e_{i1}, [..., [e_{i_{k-1}}, e_{ik}]]].
/// A degree-k tensor L is a Lie element iff the result equals k*L.
template <typename S>
Eigen::Vector<S, Eigen::Dynamic> dynkin_rbracket(
    const Eigen::Ref<const Eigen::Vector<S, Eigen::Dynamic>>& block, int k, int d) {
    using Block = Eigen::Vector<S, Eigen::Dynamic>;
    if (k == 1) return block;
    const Eigen::Index sub = block.size() / d;
    Block out = Block::Zero(block.size());
    for (int i = 0; i < d; ++i) {
        Block rsub = dynkin_rbracket<S>(block.segment(i * sub, sub), k - 1, d);
        out.segment(i * sub, sub) += rsub;           // e_i (x) r(T_i)
        for (Eigen::Index j = 0; j < sub; ++j) {     // - r(T_i) (x) e_i
            out(j * d + i) -= rsub(j);
        }
    }
    return out;
}

/// Tests membership in G^N = exp(L^N): every homogeneous level L_k of
/// log(g) must satisfy |r(L_k) - k L_k| <= tol (1 + |L_k|).
template <typename S>
bool is_group_like(const GroupElementT<S>& g, S tol = S(1e-8)) {
    const LieSeriesT<S> l = log(g);
    for (int k = 1; k <= g.shape().N; ++k) {
        const auto& Lk = l.level(k);
        const auto r = dynkin_rbracket<S>(Lk, k, g.shape().d);
        if ((r - S(k) * Lk).norm() > tol * (S(1) + Lk.norm())) return false;
    }
    return true;
}

/// Flat index of the word (i_1,...,i_k), letters in 0..d-1, i_1 most
/// significant.
inline Eigen::Index word_index(const AlgebraShape& shape, const std::vector<int>& word) {
    Eigen::Index idx = 0;
    for (int letter : word) idx = idx * shape.d + letter;
    return idx;
}

/// Truncate (project) to a shallower depth.
template <typename S>
GroupElementT<S> project(const GroupElementT<S>& g, int N) {
    if (N >= g.shape().N) return g;
    TensorSeriesT<S> out(AlgebraShape(g.shape().d, N));
    for (int k = 0; k <= N; ++k) out.levels[k] = g.level(k);
    return GroupElementT<S>(out);
}

}  // namespace rplab
