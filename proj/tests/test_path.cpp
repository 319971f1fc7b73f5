#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rplab/path.hpp"
#include "test_util.hpp"

using namespace rplab;
using testutil::max_abs_diff;

namespace {

PiecewiseLinearPath random_path(int d, int segments, RngStream& rng, double amp = 1.0) {
    Eigen::MatrixXd inc(d, segments);
    for (int j = 0; j < segments; ++j) {
        for (int i = 0; i < d; ++i) inc(i, j) = rng.uniform(-amp, amp);
    }
    return path_from_increments(inc, Eigen::VectorXd::Zero(d));
}

// Independent oracle for the nested integrals over [s, t]: composite
// Gauss-Legendre panels aligned with the segment breakpoints.  The
// integrands are piecewise polynomials of degree < 8, so GL-8 is exact
// up to round-off.  Exponential in word length; test-sized paths only.
constexpr double kGlNode[4] = {0.1834346424956498, 0.5255324099163290,
                               0.7966664774136267, 0.9602898564975363};
constexpr double kGlWeight[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

double slope(const PiecewiseLinearPath& x, int coord, double u) {
    for (Eigen::Index i = 0; i + 1 < x.times.size(); ++i) {
        if (u >= x.times(i) && u <= x.times(i + 1)) {
            return (x.points(coord, i + 1) - x.points(coord, i)) / (x.times(i + 1) - x.times(i));
        }
    }
    return 0.0;
}

double nested_integral(const PiecewiseLinearPath& x, const std::vector<int>& word, double s,
                       double upper) {
    if (word.empty()) return 1.0;
    const int last = word.back();
    std::vector<int> prefix(word.begin(), word.end() - 1);
    double acc = 0.0;
    std::vector<double> cuts{s};
    for (Eigen::Index i = 0; i < x.times.size(); ++i) {
        if (x.times(i) > s && x.times(i) < upper) cuts.push_back(x.times(i));
    }
    cuts.push_back(upper);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double a = cuts[c], b = cuts[c + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < 4; ++q) {
            for (double sign : {-1.0, 1.0}) {
                const double v = mid + sign * half * kGlNode[q];
                acc += half * kGlWeight[q] * nested_integral(x, prefix, s, v) * slope(x, last, v);
            }
        }
    }
    return acc;
}

}  // namespace

TEST_CASE("segment signature: zero increment and explicit level blocks") {
    AlgebraShape sh(2, 2);
    CHECK(max_abs_diff(segment_signature(Eigen::Vector2d::Zero(), sh).series,
                       unit(sh).series) == 0.0);

    GroupElement g = segment_signature(Eigen::Vector2d(1.0, 0.0), sh);
    Eigen::Vector4d expected;
    expected << 0.5, 0.0, 0.0, 0.0;
    CHECK((g.level(2) - expected).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("signature agrees with nested quadrature oracle") {
    RngStream rng(41);
    AlgebraShape sh(2, 3);
    PiecewiseLinearPath x = random_path(2, 3, rng);

    const double s = 0.07, t = 0.93;
    GroupElement g = path_signature(x, s, t, sh);
    for (int k = 1; k <= sh.N; ++k) {
        std::vector<int> word(k, 0);
        while (true) {
            const double oracle = nested_integral(x, word, s, t);
            const Eigen::Index idx = word_index(sh, word);
            CHECK(std::abs(g.level(k)(idx) - oracle) < 1e-10);
            int pos = k - 1;
            while (pos >= 0 && word[pos] == sh.d - 1) word[pos--] = 0;
            if (pos < 0) break;
            ++word[pos];
        }
    }
}

TEST_CASE("two-segment example equals the group product") {
    AlgebraShape sh(2, 2);
    Eigen::MatrixXd inc(2, 2);
    inc << 1, 0, 0, 1;  // unit step along e1, then along e2
    PiecewiseLinearPath x = path_from_increments(inc, Eigen::Vector2d::Zero());
    GroupElement g = path_signature(x, sh);
    CHECK(g.level(1)(0) == doctest::Approx(1.0));
    CHECK(g.level(1)(1) == doctest::Approx(1.0));
    Eigen::Vector4d expected;
    expected << 0.5, 1.0, 0.0, 0.5;
    CHECK((g.level(2) - expected).cwiseAbs().maxCoeff() < 1e-15);

    GroupElement direct = multiply(exp(generator(sh, 0)), exp(generator(sh, 1)));
    CHECK(max_abs_diff(g.series, direct.series) < 1e-15);
}

TEST_CASE("constant path has unit signature on every interval") {
    AlgebraShape sh(2, 3);
    Eigen::VectorXd t(3);
    t << 0.0, 0.4, 1.0;
    Eigen::MatrixXd p = Eigen::MatrixXd::Ones(2, 3);
    PiecewiseLinearPath x(t, p);
    CHECK(max_abs_diff(path_signature(x, 0.1, 0.8, sh).series, unit(sh).series) == 0.0);
    CHECK(max_abs_diff(path_signature(x, sh).series, unit(sh).series) == 0.0);
}

TEST_CASE("Chen identity over random paths and split points") {
    RngStream rng(43);
    for (int d = 1; d <= 3; ++d) {
        for (int N = 1; N <= 4; ++N) {
            AlgebraShape sh(d, N);
            for (int trial = 0; trial < 8; ++trial) {
                PiecewiseLinearPath x = random_path(d, 6, rng);
                double s = rng.uniform(0.0, 1.0), t = rng.uniform(0.0, 1.0),
                       u = rng.uniform(0.0, 1.0);
                if (s > t) std::swap(s, t);
                if (t > u) std::swap(t, u);
                if (s > t) std::swap(s, t);
                GroupElement lhs =
                    multiply(path_signature(x, s, t, sh), path_signature(x, t, u, sh));
                GroupElement rhs = path_signature(x, s, u, sh);
                CHECK(testutil::rel_diff(lhs.series, rhs.series) < 1e-12);
            }
        }
    }
}

TEST_CASE("rejects reversed interval") {
    RngStream rng(47);
    PiecewiseLinearPath x = random_path(2, 3, rng);
    AlgebraShape sh(2, 2);
    CHECK_THROWS_AS(path_signature(x, 0.8, 0.2, sh), std::invalid_argument);
}

TEST_CASE("time reversal gives the inverse signature") {
    RngStream rng(53);
    AlgebraShape sh(3, 3);
    for (int trial = 0; trial < 10; ++trial) {
        PiecewiseLinearPath x = random_path(3, 5, rng);
        GroupElement fwd = path_signature(x, sh);
        GroupElement bwd = path_signature(reverse(x), sh);
        CHECK(max_abs_diff(bwd.series, inverse(fwd).series) < 1e-12);
    }
}

TEST_CASE("spatial scaling acts as dilation") {
    RngStream rng(59);
    AlgebraShape sh(2, 4);
    for (int trial = 0; trial < 10; ++trial) {
        PiecewiseLinearPath x = random_path(2, 5, rng);
        const double lam = rng.uniform(-2.0, 2.0);
        CHECK(testutil::rel_diff(path_signature(scale(lam, x), sh).series,
                                 dilate(lam, path_signature(x, sh)).series) < 1e-12);
    }
}

TEST_CASE("signatures of piecewise-linear paths are group-like") {
    RngStream rng(61);
    AlgebraShape sh(2, 4);
    for (int trial = 0; trial < 10; ++trial) {
        PiecewiseLinearPath x = random_path(2, 5, rng);
        CHECK(is_group_like(path_signature(x, sh), 1e-8));
    }
}
