#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "rplab/geodesic.hpp"
#include "test_util.hpp"

using namespace rplab;

namespace {

double signature_defect(const PiecewiseLinearPath& path, const GroupElement& g) {
    const GroupElement have = path_signature(path, g.shape());
    double worst = 0.0;
    for (int k = 1; k <= g.shape().N; ++k) {
        worst = std::max(worst, (have.level(k) - g.level(k)).cwiseAbs().maxCoeff());
    }
    return worst;
}

GroupElement heisenberg_element(const Eigen::Vector2d& w, double a) {
    AlgebraShape sh(2, 2);
    LieSeries l(sh);
    l.level(1) = w;
    l.level(2)(1) = a;
    l.level(2)(2) = -a;
    return exp(l);
}

PiecewiseLinearPath random_path(int d, int segments, RngStream& rng, double amp = 1.0) {
    Eigen::MatrixXd inc(d, segments);
    for (int j = 0; j < segments; ++j) {
        for (int i = 0; i < d; ++i) inc(i, j) = rng.uniform(-amp, amp);
    }
    return path_from_increments(inc, Eigen::VectorXd::Zero(d));
}

}  // namespace

TEST_CASE("dynkin reconstruction identity behind the word decomposition") {
    // a homogeneous Lie element equals (1/k) sum_w L_w B_w; spot-check by
    // re-expanding the right-nested brackets of its own coefficients
    AlgebraShape sh(2, 3);
    RngStream rng(101);
    LieSeries base = lie_bracket(generator(sh, 0), lie_bracket(generator(sh, 0), generator(sh, 1)));
    LieSeries more = lie_bracket(generator(sh, 1), lie_bracket(generator(sh, 0), generator(sh, 1)));
    LieSeries l(sh);
    l.series = 0.7 * base.series - 1.3 * more.series;
    const auto r = dynkin_rbracket<double>(l.level(3), 3, 2);
    CHECK((r - 3.0 * l.level(3)).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("chow: single segment, pure area, random round trips") {
    AlgebraShape sh(2, 2);
    LieSeries v(sh);
    v.level(1) << 0.8, -0.6;
    PiecewiseLinearPath straight = chow_decompose(exp(v));
    CHECK(straight.segment_count() == 1);
    CHECK(signature_defect(straight, exp(v)) < 1e-12);
    CHECK(straight.length() == doctest::Approx(1.0));

    // pure area: closed path enclosing signed area 1
    GroupElement area = heisenberg_element(Eigen::Vector2d::Zero(), 1.0);
    PiecewiseLinearPath loop = chow_decompose(area);
    CHECK((loop.points.col(loop.points.cols() - 1) - loop.points.col(0)).norm() < 1e-12);
    CHECK(signature_defect(loop, area) < 1e-8);

    RngStream rng(103);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + static_cast<int>(rng.below(2));
        const int N = 2 + static_cast<int>(rng.below(3));
        AlgebraShape shr(d, N);
        GroupElement target = path_signature(random_path(d, 5, rng), shr);
        CHECK(signature_defect(chow_decompose(target), target) < 1e-8);
    }
}

TEST_CASE("chow round trip on random group-like elements") {
    RngStream rng(107);
    for (int trial = 0; trial < 60; ++trial) {
        const int d = 2 + static_cast<int>(rng.below(2));
        const int N = 2 + static_cast<int>(rng.below(3));
        AlgebraShape sh(d, N);
        GroupElement g = testutil::random_group_like(sh, rng, 0.9);
        CHECK(signature_defect(chow_decompose(g), g) < 1e-8);
    }
}

TEST_CASE("chow rejects non-group-like input") {
    AlgebraShape sh(2, 2);
    GroupElement bad = unit(sh);
    bad.level(2) << 0.0, 1.0, 1.0, 0.0;
    CHECK_THROWS_AS(chow_decompose(bad), std::invalid_argument);
}

TEST_CASE("cc lower bound: generator, pure bracket, unit") {
    AlgebraShape sh(2, 2);
    LieSeries v(sh);
    v.level(1) << 3.0, 4.0;
    CHECK(cc_norm_lower(exp(v)) == doctest::Approx(5.0));

    GroupElement area = heisenberg_element(Eigen::Vector2d::Zero(), 1.0);
    CHECK(cc_norm_lower(area) == doctest::Approx(std::pow(2.0, 0.75)));

    CHECK(cc_norm_lower(unit(sh)) == 0.0);
}

TEST_CASE("heisenberg oracle: straight, isoperimetric, monotone profile") {
    CHECK(heisenberg_cc_norm(heisenberg_element(Eigen::Vector2d(0.3, -0.4), 0.0)) ==
          doctest::Approx(0.5));
    CHECK(heisenberg_cc_norm(heisenberg_element(Eigen::Vector2d::Zero(), 1.0)) ==
          doctest::Approx(2.0 * std::sqrt(std::numbers::pi)).epsilon(1e-10));
    CHECK(heisenberg_cc_norm(heisenberg_element(Eigen::Vector2d::Zero(), -2.5)) ==
          doctest::Approx(2.0 * std::sqrt(2.5 * std::numbers::pi)).epsilon(1e-10));

    // the arc-angle profile used by the solver is strictly increasing
    double prev = 0.0;
    for (int i = 1; i < 200; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / 200.0;
        const double s = std::sin(0.5 * phi);
        const double val = (phi - std::sin(phi)) / (8.0 * s * s);
        CHECK(val > prev);
        prev = val;
    }
}

TEST_CASE("heisenberg arc path realizes the prescribed signature") {
    RngStream rng(109);
    AlgebraShape sh(2, 2);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::Vector2d w(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const double a = rng.uniform(-0.8, 0.8);
        PiecewiseLinearPath arc = heisenberg_arc_path(w, a, 64);
        GroupElement sig = path_signature(arc, sh);
        CHECK((sig.level(1) - w).norm() < 1e-9);
        const double area = 0.5 * (log(sig).level(2)(1) - log(sig).level(2)(2));
        // polygonal area deficit is O(1/m^2)
        CHECK(area == doctest::Approx(a).epsilon(0.01));
    }
}

TEST_CASE("upper bound: straight segment is globally optimal") {
    AlgebraShape sh(2, 2);
    LieSeries v(sh);
    v.level(1) << 1.2, -0.5;
    GeodesicFamilyConfig cfg;
    cfg.m = 16;
    CCBounds b = cc_norm_upper(exp(v), cfg);
    const double exact = v.level(1).norm();
    CHECK(b.upper == doctest::Approx(exact).epsilon(1e-6));
    CHECK(b.lower == doctest::Approx(exact).epsilon(1e-12));
    CHECK(b.defect <= cfg.tol);
    CHECK(signature_defect(b.path, exp(v)) <= cfg.tol);
}

TEST_CASE("upper bound: unit element gives empty certificate") {
    AlgebraShape sh(2, 2);
    CCBounds b = cc_norm_upper(unit(sh));
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 0.0);
    CHECK(b.segments == 0);
}

TEST_CASE("upper bound: pure area within 2 percent of the isoperimetric value") {
    GroupElement area = heisenberg_element(Eigen::Vector2d::Zero(), 1.0);
    GeodesicFamilyConfig cfg;
    cfg.m = 32;
    CCBounds b = cc_norm_upper(area, cfg);
    const double dido = 2.0 * std::sqrt(std::numbers::pi);
    CHECK(b.upper >= dido * (1.0 - 1e-6));
    CHECK(b.upper <= dido * 1.02);
    CHECK(b.defect <= cfg.tol);
}

TEST_CASE("sandwich holds on random heisenberg elements") {
    RngStream rng(113);
    GeodesicFamilyConfig cfg;
    cfg.m = 24;
    cfg.penalty_rounds = 4;
    for (int trial = 0; trial < 10; ++trial) {
        Eigen::Vector2d w(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        const double a = rng.uniform(-0.7, 0.7);
        GroupElement g = heisenberg_element(w, a);
        const double lower = cc_norm_lower(g);
        const double oracle = heisenberg_cc_norm(g);
        CCBounds b = cc_norm_upper(g, cfg);
        CHECK(lower <= oracle * (1.0 + 1e-9) + 1e-12);
        CHECK(oracle <= b.upper + 1e-5 * (1.0 + oracle));
        CHECK(b.lower <= b.upper + 1e-9);
    }
}

TEST_CASE("upper bound respects symmetry, subadditivity, homogeneity") {
    RngStream rng(127);
    GeodesicFamilyConfig cfg;
    cfg.m = 24;
    cfg.penalty_rounds = 4;
    for (int trial = 0; trial < 3; ++trial) {
        Eigen::Vector2d w(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
        Eigen::Vector2d w2(rng.uniform(-0.8, 0.8), rng.uniform(-0.8, 0.8));
        GroupElement g = heisenberg_element(w, rng.uniform(-0.5, 0.5));
        GroupElement h = heisenberg_element(w2, rng.uniform(-0.5, 0.5));

        const double ug = cc_norm_upper(g, cfg).upper;
        const double ugi = cc_norm_upper(inverse(g), cfg).upper;
        CHECK(std::abs(ug - ugi) <= 0.02 * ug + 1e-8);

        const double uh = cc_norm_upper(h, cfg).upper;
        const double ugh = cc_norm_upper(multiply(g, h), cfg).upper;
        CHECK(ugh <= ug + uh + 1e-4);

        const double lam = rng.uniform(0.3, 2.0);
        const double uscaled = cc_norm_upper(dilate(lam, g), cfg).upper;
        CHECK(uscaled <= lam * ug * 1.02 + 1e-8);
    }
}

TEST_CASE("geodesic family: straight skeleton meets its budget with K = 1") {
    AlgebraShape sh(2, 2);
    Eigen::Vector2d v(1.0, 2.0);
    Eigen::VectorXd t(2);
    t << 0.0, 1.0;
    Eigen::MatrixXd p(2, 2);
    p.col(0).setZero();
    p.col(1) = v;
    RoughPathGrid grid = make_uniform_grid(PiecewiseLinearPath(t, p), 8, sh, 1.0);

    GeodesicFamilyConfig cfg;
    cfg.K = 1.0;
    cfg.m = 8;
    cfg.penalty_rounds = 3;
    auto cells = geodesic_family(grid, cfg);
    REQUIRE(cells.size() == 8);
    for (const auto& cell : cells) {
        CHECK(cell.within_budget);
        CHECK(cell.defect <= cfg.tol);
        CHECK(cell.length == doctest::Approx(v.norm() / 8.0).epsilon(1e-6));
    }
}

TEST_CASE("geodesic family: per-cell signature round trip on a rough grid") {
    RngStream rng(131);
    AlgebraShape sh(2, 2);
    PiecewiseLinearPath skel = random_path(2, 64, rng, 0.3);
    RoughPathGrid grid = make_uniform_grid(skel, 8, sh, 2.5);

    GeodesicFamilyConfig cfg;
    cfg.m = 12;
    cfg.penalty_rounds = 4;
    auto cells = geodesic_family(grid, cfg);
    for (Eigen::Index i = 0; i < grid.cell_count(); ++i) {
        CHECK(cells[i].defect <= cfg.tol);
        CHECK(cells[i].path.t_begin() == doctest::Approx(grid.times(i)));
        CHECK(cells[i].path.t_end() == doctest::Approx(grid.times(i + 1)));
        const GroupElement sig = path_signature(cells[i].path, sh);
        double worst = 0.0;
        for (int k = 1; k <= 2; ++k) {
            worst = std::max(worst,
                             (sig.level(k) - grid.increments[i].level(k)).cwiseAbs().maxCoeff());
        }
        CHECK(worst <= cfg.tol * 1.001);
    }
}
