#pragma once

// Families of driving vector fields V_1,...,V_d on R^e with directional
// derivatives up to a declared order.  Three kinds: linear-affine
// (V_i(y) = A_i y + b_i, derivatives exact), polynomial (dense symmetric
// coefficient tensors per degree, derivatives exact), and generic
// (black-box evaluator, central finite differences).  Fields are assumed
// bounded with bounded derivatives on the experiment domain; that is the
// caller's contract and is not enforced here.

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace rplab {

enum class FieldKind { LinearAffine, Polynomial, Generic };

class VectorFieldFamily {
  public:
    using Evaluator = std::function<Eigen::VectorXd(int, const Eigen::VectorXd&)>;

    /// V_i(y) = A[i] y + b[i].
    static VectorFieldFamily linear_affine(std::vector<Eigen::MatrixXd> A,
                                           std::vector<Eigen::VectorXd> b);

    /// V_i(y) = sum_q C[i][q] y^{(x)q}; C[i][q] is e x e^q, row-major in
    /// the trailing multi-index and symmetric in it.
    static VectorFieldFamily polynomial(std::vector<std::vector<Eigen::MatrixXd>> coeffs);

    /// Black-box fields; derivatives by nested central differences.
    static VectorFieldFamily generic(int e, int d, Evaluator fn, int order);

    /// Built-in families: "linear1d", "rotation2d", "polynomial_saturating".
    static VectorFieldFamily registry(const std::string& name);

    [[nodiscard]] int state_dim() const { return e_; }
    [[nodiscard]] int driver_dim() const { return d_; }
    [[nodiscard]] FieldKind kind() const { return kind_; }
    [[nodiscard]] int order() const { return order_; }

    [[nodiscard]] Eigen::VectorXd value(int i, const Eigen::VectorXd& y) const;

    /// D^r V_i(y)[dirs(0), ..., dirs(r-1)], r = dirs.size().
    [[nodiscard]] Eigen::VectorXd derivative(int i, const Eigen::VectorXd& y,
                                             std::span<const Eigen::VectorXd> dirs) const;

    [[nodiscard]] const std::vector<Eigen::MatrixXd>& linear_matrices() const { return A_; }
    [[nodiscard]] const std::vector<Eigen::VectorXd>& affine_shifts() const { return b_; }
    [[nodiscard]] const std::vector<std::vector<Eigen::MatrixXd>>& poly_coeffs() const {
        return poly_;
    }

  private:
    VectorFieldFamily() = default;

    int e_ = 0;
    int d_ = 0;
    FieldKind kind_ = FieldKind::Generic;
    int order_ = 0;

    std::vector<Eigen::MatrixXd> A_;
    std::vector<Eigen::VectorXd> b_;
    std::vector<std::vector<Eigen::MatrixXd>> poly_;
    Evaluator eval_;
};

}  // namespace rplab
