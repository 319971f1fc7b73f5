#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rplab/tail.hpp"
#include "test_util.hpp"

using namespace rplab;

namespace {

VectorFieldFamily shear_fields() {
    // non-commuting nilpotent pair on R^2
    Eigen::MatrixXd A1 = Eigen::MatrixXd::Zero(2, 2);
    A1(0, 1) = 1.0;
    Eigen::MatrixXd A2 = Eigen::MatrixXd::Zero(2, 2);
    A2(1, 0) = 1.0;
    std::vector<Eigen::VectorXd> b{Eigen::Vector2d(0.1, 0.0), Eigen::Vector2d(0.0, -0.1)};
    return VectorFieldFamily::linear_affine({A1, A2}, std::move(b));
}

}  // namespace

TEST_CASE("gauss tail probe: validation, degenerate input, gaussian data") {
    CHECK_THROWS_AS(gauss_tail_probe(std::vector<double>(10, 1.0), 4), std::invalid_argument);

    std::vector<double> flat(2000, 3.25);
    GaussTailReport dg = gauss_tail_probe(flat, 4);
    CHECK(dg.degenerate);
    CHECK(dg.pass);

    RngStream rng(31415);
    std::vector<double> normals(20000);
    for (auto& v : normals) v = std::abs(rng.normal());
    GaussTailReport rep = gauss_tail_probe(normals, 6);
    CHECK_FALSE(rep.degenerate);
    CHECK(rep.pass);
    CHECK(rep.alpha_hat > 0.2);
    CHECK(rep.alpha_hat < 0.8);          // half-normal has alpha = 1/2
    CHECK(rep.quad_coefficient < 0.05);  // log-survival curves downward
    CHECK(rep.moment_growth_slope > 0.0);
    CHECK(rep.moment_growth_slope <= 0.6);
}

TEST_CASE("gauss tail probe: scaling the samples rescales alpha by 1/lambda^2") {
    RngStream rng(2718);
    std::vector<double> base(5000);
    for (auto& v : base) v = std::abs(rng.normal());
    std::vector<double> scaled = base;
    for (auto& v : scaled) v *= 3.0;
    const GaussTailReport r1 = gauss_tail_probe(base, 4);
    const GaussTailReport r3 = gauss_tail_probe(scaled, 4);
    CHECK(r3.alpha_hat == doctest::Approx(r1.alpha_hat / 9.0).epsilon(1e-9));
}

TEST_CASE("azencott experiment: degenerate limits") {
    // constant fields: zero defect, zero probability for positive R
    std::vector<Eigen::MatrixXd> A(2, Eigen::MatrixXd::Zero(2, 2));
    std::vector<Eigen::VectorXd> b{Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)};
    VectorFieldFamily cf = VectorFieldFamily::linear_affine(std::move(A), std::move(b));
    Eigen::VectorXd t_grid(1), r_grid(2);
    t_grid << 0.25;
    r_grid << 1.0, 2.0;
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(2);
    TailReport rep = azencott_tail_experiment(cf, 3, 2.5, t_grid, r_grid, 50, 9, y0);
    CHECK(rep.probabilities.maxCoeff() == 0.0);
    CHECK(rep.monotone_pass);

    // R -> 0+: every nonzero defect exceeds the threshold
    VectorFieldFamily sf = shear_fields();
    Eigen::VectorXd r_tiny(2);
    r_tiny << 1e-9, 1.0;
    Eigen::VectorXd y1(2);
    y1 << 1.0, 0.5;
    TailReport tiny = azencott_tail_experiment(sf, 3, 2.5, t_grid, r_tiny, 40, 10, y1);
    for (Eigen::Index ti = 0; ti < tiny.t_grid.size(); ++ti) {
        CHECK(tiny.probabilities(ti, 0) == 1.0);
    }
}

TEST_CASE("azencott experiment: monotone decay on a small run") {
    VectorFieldFamily sf = shear_fields();
    Eigen::VectorXd t_grid(2), r_grid(4);
    t_grid << 1.0 / 64, 1.0 / 16;
    r_grid << 0.25, 0.5, 1.0, 2.0;
    Eigen::VectorXd y0(2);
    y0 << 1.0, 0.5;
    TailReport rep = azencott_tail_experiment(sf, 3, 2.5, t_grid, r_grid, 400, 2024, y0);
    CHECK(rep.samples == 400);
    CHECK(rep.monotone_pass);
    CHECK(rep.castell_exponent == doctest::Approx(0.5));
    // alternative normalization reported alongside
    CHECK(rep.probabilities_hoelder.rows() == 2);
    INFO("max collapse gap ", rep.max_collapse_gap);
    for (Eigen::Index ti = 0; ti < 2; ++ti) {
        for (Eigen::Index ri = 0; ri + 1 < 4; ++ri) {
            CHECK(rep.probabilities(ti, ri + 1) <=
                  rep.probabilities(ti, ri) + rep.ci_half_widths(ti, ri) +
                      rep.ci_half_widths(ti, ri + 1));
        }
    }

    CHECK_THROWS_AS(
        azencott_tail_experiment(sf, 2, 2.5, t_grid, r_grid, 10, 1, y0),  // N < [p]+1
        std::invalid_argument);
}

TEST_CASE("lq experiment: proxy identity, moment ordering, decay") {
    VectorFieldFamily sf = shear_fields();
    Eigen::VectorXd y0(2);
    y0 << 1.0, 0.5;
    LqReport rep = lq_convergence_experiment(sf, 2.9, {1.0, 2.0, 4.0}, {3, 5, 7}, 250, 77, y0);

    // finest level is the proxy: Z = 0 identically
    for (Eigen::Index qi = 0; qi < 3; ++qi) {
        CHECK(rep.moment_norms(2, qi) == 0.0);
    }
    // moment monotonicity in q (Jensen)
    for (Eigen::Index li = 0; li + 1 < 3; ++li) {
        CHECK(rep.moment_norms(li, 2) >= rep.moment_norms(li, 0) - 1e-12);
        CHECK(rep.moment_norms(li, 1) >= rep.moment_norms(li, 0) - 1e-12);
    }
    CHECK(rep.monotone_pass);
    CHECK(rep.sup_holder_norms.size() == 250);
    for (double v : rep.sup_holder_norms) CHECK(v > 0.0);

    CHECK_THROWS_AS(lq_convergence_experiment(sf, 2.9, {1.0}, {5, 3}, 100, 1, y0),
                    std::invalid_argument);
}
