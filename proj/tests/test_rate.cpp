#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "rplab/davie_recursion.hpp"
#include "rplab/rate.hpp"
#include "rplab/stats.hpp"
#include "test_util.hpp"

using namespace rplab;

namespace {

PiecewiseLinearPath sampled_curve(int n) {
    Eigen::VectorXd t(n + 1);
    Eigen::MatrixXd p(2, n + 1);
    for (int i = 0; i <= n; ++i) {
        t(i) = static_cast<double>(i) / n;
        p(0, i) = std::sin(3.0 * t(i));
        p(1, i) = std::cos(2.0 * t(i)) - 1.0;
    }
    return {t, p};
}

std::vector<double> dyadic_lengths(int j_min, int j_max) {
    std::vector<double> out;
    for (int j = j_min; j <= j_max; ++j) out.push_back(std::pow(2.0, -j));
    return out;
}

}  // namespace

TEST_CASE("stats helpers: fits, moments, binomial, quantile") {
    Eigen::VectorXd x(4), y(4);
    x << 0, 1, 2, 3;
    y << 1, 3, 5, 7;
    const LinearFit f = fit_line(x, y);
    CHECK(f.slope == doctest::Approx(2.0));
    CHECK(f.intercept == doctest::Approx(1.0));

    Eigen::VectorXd q(5);
    q << 1, 4, 9, 16, 25;  // exact quadratic
    const Eigen::VectorXd c = polyfit(x.size() == 4 ? Eigen::VectorXd::LinSpaced(5, 1, 5) : x, q, 2);
    CHECK(c(2) == doctest::Approx(1.0).epsilon(1e-10));

    const BinomialEstimate be = binomial_estimate(40, 100);
    CHECK(be.p_hat == doctest::Approx(0.4));
    CHECK(be.half_width == doctest::Approx(1.96 * std::sqrt(0.4 * 0.6 / 100.0)));
    CHECK(binomial_estimate(0, 100).half_width == doctest::Approx(0.03));

    std::vector<double> sorted{1.0, 2.0, 3.0, 4.0};
    CHECK(quantile_sorted(sorted, 0.5) == doctest::Approx(2.5));
}

TEST_CASE("smooth-driver slopes reach N+1 for linear and polynomial fields") {
    PiecewiseLinearPath skel = sampled_curve(2048);
    RoughPathGrid grid = make_grid(skel, skel.times, AlgebraShape(2, 2), 1.0);
    const auto lengths = dyadic_lengths(2, 7);

    VectorFieldFamily rot = VectorFieldFamily::registry("rotation2d");
    Eigen::VectorXd y0r = Eigen::VectorXd::Zero(3);
    y0r << 1.0, 0.0, 0.0;
    for (int N : {1, 2, 3}) {
        RateReport r = davie_rate_experiment(rot, N, 1.0, grid, lengths, y0r);
        CHECK_FALSE(r.degenerate);
        CHECK(r.fitted_slope >= N + 1 - 0.1);
        CHECK(r.theta_target == doctest::Approx(N + 1.0));
    }

    VectorFieldFamily poly = VectorFieldFamily::registry("polynomial_saturating");
    Eigen::VectorXd y0p(2);
    y0p << 0.1, 0.1;
    for (int N : {1, 2}) {
        RateReport r = davie_rate_experiment(poly, N, 1.0, grid, lengths, y0p);
        CHECK(r.fitted_slope >= N + 1 - 0.1);
    }
}

TEST_CASE("zero driver refuses the regression with a note") {
    Eigen::VectorXd t = Eigen::VectorXd::LinSpaced(129, 0.0, 1.0);
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(2, 129);
    PiecewiseLinearPath still(t, p);
    RoughPathGrid grid = make_grid(still, t, AlgebraShape(2, 2), 1.0);
    VectorFieldFamily rot = VectorFieldFamily::registry("rotation2d");
    Eigen::VectorXd y0 = Eigen::VectorXd::Ones(3);
    RateReport r = davie_rate_experiment(rot, 2, 1.0, grid, dyadic_lengths(2, 5), y0);
    CHECK(r.degenerate);
    CHECK(r.note.find("all-zero") != std::string::npos);
}

TEST_CASE("rate experiment rejects short length lists and misaligned windows") {
    PiecewiseLinearPath skel = sampled_curve(64);
    RoughPathGrid grid = make_grid(skel, skel.times, AlgebraShape(2, 2), 1.0);
    VectorFieldFamily rot = VectorFieldFamily::registry("rotation2d");
    Eigen::VectorXd y0 = Eigen::VectorXd::Ones(3);
    CHECK_THROWS_AS(davie_rate_experiment(rot, 2, 1.0, grid, {0.5, 0.25}, y0),
                    std::invalid_argument);
    CHECK_THROWS_AS(davie_rate_experiment(rot, 2, 1.0, grid, {0.5, 0.25, 0.1234}, y0),
                    std::invalid_argument);
}

TEST_CASE("constant growth probe: constant fields give zero constants") {
    std::vector<Eigen::MatrixXd> A(2, Eigen::MatrixXd::Zero(2, 2));
    std::vector<Eigen::VectorXd> b{Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.0, 1.0)};
    VectorFieldFamily cf = VectorFieldFamily::linear_affine(std::move(A), std::move(b));
    PiecewiseLinearPath skel = sampled_curve(512);
    RoughPathGrid grid = make_grid(skel, skel.times, AlgebraShape(2, 2), 1.0);
    Eigen::VectorXd y0 = Eigen::VectorXd::Zero(2);
    ConstantGrowthReport rep =
        constant_growth_probe(cf, 2, 1.0, grid, {1, 2, 4, 8}, dyadic_lengths(2, 5), y0);
    CHECK(rep.constants.cwiseAbs().maxCoeff() < 1e-11);
}

TEST_CASE("constant growth probe: monotone curve and at-most-quadratic log growth") {
    VectorFieldFamily rot = VectorFieldFamily::registry("rotation2d");
    PiecewiseLinearPath skel = sampled_curve(1024);
    RoughPathGrid grid = make_grid(skel, skel.times, AlgebraShape(2, 2), 1.0);
    Eigen::VectorXd y0(3);
    y0 << 1.0, 0.0, 0.0;
    ConstantGrowthReport rep = constant_growth_probe(rot, 2, 1.0, grid, {1, 2, 4, 8, 16},
                                                     dyadic_lengths(2, 6), y0);
    CHECK(rep.monotone);
    CHECK(rep.cubic_check_ran);
    CHECK(rep.at_most_quadratic);
    // the measured norm scales exactly linearly under dilation
    for (Eigen::Index i = 0; i < rep.scales.size(); ++i) {
        CHECK(rep.hoelder_norms(i) ==
              doctest::Approx(rep.scales(i) * rep.hoelder_norms(0)).epsilon(1e-9));
    }
}

TEST_CASE("davie recursion: explicit lambda and gamma values") {
    const DavieRecursion rec(2.5, 3, 0.0);
    CHECK(rec.a == doctest::Approx(std::pow(2.0, 1.0 - 1.6)));

    // Lambda(k, 0) = a^k
    for (int k : {0, 1, 2, 5}) {
        auto [lam, gam] = lambda_gamma(rec, k, 0);
        CHECK(lam == doctest::Approx(std::pow(rec.a, k)).epsilon(1e-14));
    }
    // Gamma(n, 0) geometric
    for (int n : {0, 1, 4, 9}) {
        auto [lam, gam] = lambda_gamma(rec, 0, n);
        CHECK(gam ==
              doctest::Approx((1.0 - std::pow(rec.a, n + 1)) / (1.0 - rec.a)).epsilon(1e-13));
    }
    // Lambda(1, b) = a (1 + b)
    for (double b : {0.5, 2.0, 40.0}) {
        const DavieRecursion rb(2.5, 3, b);
        auto [lam, gam] = lambda_gamma(rb, 1, 0);
        CHECK(lam == doctest::Approx(rb.a * (1.0 + b)).epsilon(1e-14));
    }

    CHECK_THROWS_AS(DavieRecursion(2.5, 1, 0.0), std::invalid_argument);  // a >= 1
}

TEST_CASE("davie recursion: monotonicity of gamma in n and b") {
    const DavieRecursion rec(2.1, 2, 3.0);
    double prev = 0.0;
    for (int n = 0; n < 8; ++n) {
        auto [lam, gam] = lambda_gamma(rec, 0, n);
        CHECK(gam > prev);
        prev = gam;
    }
    double prev_b = 0.0;
    for (double b : {0.0, 1.0, 5.0, 20.0}) {
        const DavieRecursion rb(2.1, 2, b);
        auto [lam, gam] = lambda_gamma(rb, 0, 10);
        CHECK(gam >= prev_b);
        prev_b = gam;
    }
}

TEST_CASE("gamma limit: example value and bound comparisons") {
    const DavieRecursion rec(2.5, 3, std::numbers::e);
    const GammaLimit lim = gamma_limit(rec);
    CHECK(lim.refined_holds);
    CHECK(lim.gamma_inf > 1.0);
    CHECK(lim.terms > 3);

    // large b: refined bound beats the naive one by a wide margin
    const GammaLimit big = gamma_limit(DavieRecursion(2.5, 3, 1e3));
    CHECK(big.refined_holds);
    CHECK(big.refined_beats_naive);
}

TEST_CASE("gamma bound check over the acceptance grid") {
    const std::vector<double> grid{std::numbers::e, 10.0, 1e3, 1e6};
    for (double p : {2.1, 2.5, 3.0}) {
        const int N = static_cast<int>(std::floor(p - 1.0)) + 1 + (p == std::floor(p) ? 1 : 0);
        // smallest integer N with N > p - 1
        REQUIRE(N > p - 1.0);
        GammaBoundReport rep = gamma_limit_bound_check(p, N, grid);
        CHECK(rep.bound_holds);
        CHECK(rep.quadratic_ok);
        INFO("p = ", p, ", quadratic coefficient ", rep.quadratic_coefficient);
    }
    CHECK_THROWS_AS(gamma_limit_bound_check(2.5, 3, {1.0}), std::invalid_argument);
}
