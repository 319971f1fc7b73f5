#include "rplab/vector_field.hpp"

#include <cmath>
#include <stdexcept>

namespace rplab {

VectorFieldFamily VectorFieldFamily::linear_affine(std::vector<Eigen::MatrixXd> A,
                                                   std::vector<Eigen::VectorXd> b) {
    if (A.empty() || A.size() != b.size()) {
        throw std::invalid_argument("linear_affine: need one (A, b) pair per driving direction");
    }
    VectorFieldFamily f;
    f.kind_ = FieldKind::LinearAffine;
    f.e_ = static_cast<int>(A[0].rows());
    f.d_ = static_cast<int>(A.size());
    f.order_ = 100;  // all derivatives exact
    for (std::size_t i = 0; i < A.size(); ++i) {
        if (A[i].rows() != f.e_ || A[i].cols() != f.e_ || b[i].size() != f.e_) {
            throw std::invalid_argument("linear_affine: inconsistent dimensions");
        }
    }
    f.A_ = std::move(A);
    f.b_ = std::move(b);
    return f;
}

VectorFieldFamily VectorFieldFamily::polynomial(std::vector<std::vector<Eigen::MatrixXd>> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("polynomial: no fields");
    VectorFieldFamily f;
    f.kind_ = FieldKind::Polynomial;
    f.d_ = static_cast<int>(coeffs.size());
    f.e_ = static_cast<int>(coeffs[0][0].rows());
    f.order_ = 100;
    for (const auto& field : coeffs) {
        Eigen::Index expect = 1;
        for (const auto& C : field) {
            if (C.rows() != f.e_ || C.cols() != expect) {
                throw std::invalid_argument("polynomial: coefficient tensor of wrong size");
            }
            expect *= f.e_;
        }
    }
    f.poly_ = std::move(coeffs);
    return f;
}

VectorFieldFamily VectorFieldFamily::generic(int e, int d, Evaluator fn, int order) {
    VectorFieldFamily f;
    f.kind_ = FieldKind::Generic;
    f.e_ = e;
    f.d_ = d;
    f.order_ = order;
    f.eval_ = std::move(fn);
    return f;
}

namespace {

// contract the trailing index of an e x e^q block with v
Eigen::MatrixXd contract_last(const Eigen::MatrixXd& C, const Eigen::VectorXd& v) {
    const Eigen::Index e = v.size();
    const Eigen::Index cols = C.cols() / e;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(C.rows(), cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index j = 0; j < e; ++j) out.col(c) += v(j) * C.col(c * e + j);
    }
    return out;
}

}  // namespace

Eigen::VectorXd VectorFieldFamily::value(int i, const Eigen::VectorXd& y) const {
    return derivative(i, y, {});
}

Eigen::VectorXd VectorFieldFamily::derivative(int i, const Eigen::VectorXd& y,
                                              std::span<const Eigen::VectorXd> dirs) const {
    if (i < 0 || i >= d_) throw std::invalid_argument("field index out of range");
    const int r = static_cast<int>(dirs.size());
    if (r > order_) throw std::invalid_argument("derivative order above declared field order");

    switch (kind_) {
        case FieldKind::LinearAffine: {
            if (r == 0) return A_[i] * y + b_[i];
            if (r == 1) return A_[i] * dirs[0];
            return Eigen::VectorXd::Zero(e_);
        }
        case FieldKind::Polynomial: {
            Eigen::VectorXd out = Eigen::VectorXd::Zero(e_);
            const auto& field = poly_[static_cast<std::size_t>(i)];
            for (int q = 0; q < static_cast<int>(field.size()); ++q) {
                if (q < r) continue;
                // q! / (q-r)! times C^{(q)}[dirs, y, ..., y] (symmetric block)
                double factor = 1.0;
                for (int j = 0; j < r; ++j) factor *= static_cast<double>(q - j);
                Eigen::MatrixXd acc = field[static_cast<std::size_t>(q)];
                for (int j = 0; j < q - r; ++j) acc = contract_last(acc, y);
                for (int j = r - 1; j >= 0; --j) acc = contract_last(acc, dirs[j]);
                out += factor * acc.col(0);
            }
            return out;
        }
        case FieldKind::Generic: {
            if (r == 0) return eval_(i, y);
            // step flattens with the order to balance truncation against
            // the noise of the nested differences
            const double h = std::pow(std::numeric_limits<double>::epsilon(),
                                      1.0 / static_cast<double>(r + 2)) *
                             (1.0 + y.norm());
            std::span<const Eigen::VectorXd> inner = dirs.subspan(0, r - 1);
            const Eigen::VectorXd& u = dirs[r - 1];
            const Eigen::VectorXd fp = derivative(i, y + h * u, inner);
            const Eigen::VectorXd fm = derivative(i, y - h * u, inner);
            return (fp - fm) / (2.0 * h);
        }
    }
    throw std::logic_error("unreachable");
}

VectorFieldFamily VectorFieldFamily::registry(const std::string& name) {
    if (name == "linear1d") {
        std::vector<Eigen::MatrixXd> A{Eigen::MatrixXd::Identity(1, 1)};
        std::vector<Eigen::VectorXd> b{Eigen::VectorXd::Zero(1)};
        return linear_affine(std::move(A), std::move(b));
    }
    if (name == "rotation2d") {
        // two rotation generators on R^3; non-commuting, norm-preserving
        Eigen::MatrixXd Ax = Eigen::MatrixXd::Zero(3, 3);
        Ax(1, 2) = -1.0;
        Ax(2, 1) = 1.0;
        Eigen::MatrixXd Ay = Eigen::MatrixXd::Zero(3, 3);
        Ay(0, 2) = 1.0;
        Ay(2, 0) = -1.0;
        std::vector<Eigen::MatrixXd> A{Ax, Ay};
        std::vector<Eigen::VectorXd> b{Eigen::VectorXd::Zero(3), Eigen::VectorXd::Zero(3)};
        return linear_affine(std::move(A), std::move(b));
    }
    if (name == "polynomial_saturating") {
        // two cubic fields on R^2 with negative leading odd terms, so
        // trajectories stay in a bounded basin
        const int e = 2;
        auto zeros = [&](int q) {
            Eigen::Index cols = 1;
            for (int j = 0; j < q; ++j) cols *= e;
            return Eigen::MatrixXd::Zero(e, cols).eval();
        };
        std::vector<std::vector<Eigen::MatrixXd>> coeffs(2);
        for (int i = 0; i < 2; ++i) {
            coeffs[i] = {zeros(0), zeros(1), zeros(2), zeros(3)};
        }
        // V_1(y) = (0.9 - 0.25 y_2^2, 0.4 y_1 - 0.1 y_1^3)
        coeffs[0][0](0, 0) = 0.9;
        coeffs[0][2](0, 3) = -0.25;  // (j1,j2) = (1,1)
        coeffs[0][1](1, 0) = 0.4;
        coeffs[0][3](1, 0) = -0.1;  // (0,0,0)
        // V_2(y) = (0.2 + 0.3 y_1 y_2, 0.7 - 0.2 y_1^2 - 0.1 y_2^3)
        coeffs[1][0](0, 0) = 0.2;
        coeffs[1][2](0, 1) = 0.15;  // (0,1) and (1,0), symmetrized
        coeffs[1][2](0, 2) = 0.15;
        coeffs[1][0](1, 0) = 0.7;
        coeffs[1][2](1, 0) = -0.2;  // (0,0)
        coeffs[1][3](1, 7) = -0.1;  // (1,1,1)
        return polynomial(std::move(coeffs));
    }
    throw std::invalid_argument("unknown field registry name: " + name);
}

}  // namespace rplab
