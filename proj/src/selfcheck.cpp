#include "rplab/selfcheck.hpp"

#include <algorithm>
#include <cmath>

#include "rplab/sampling.hpp"

namespace rplab {

namespace {

double rel_defect(const TensorSeries& a, const TensorSeries& b) {
    double num = 0.0, den = 0.0;
    for (int k = 0; k <= a.shape.N; ++k) {
        num = std::max(num, (a.levels[k] - b.levels[k]).norm());
        den = std::max({den, a.levels[k].norm(), b.levels[k].norm()});
    }
    return den == 0.0 ? num : num / den;
}

struct Tracker {
    CheckResult result;
    Tracker(std::string name, double tol) {
        result.name = std::move(name);
        result.tolerance = tol;
        result.pass = true;
    }
    void observe(double defect) {
        result.worst = std::max(result.worst, defect);
        if (defect > result.tolerance) result.pass = false;
    }
    void observe_bool(bool ok) {
        if (!ok) {
            result.worst += 1.0;  // failure count for boolean checks
            result.pass = false;
        }
    }
};

}  // namespace

std::vector<CheckResult> algebra_selfcheck(int d_max, int N_max, long cases, std::uint64_t seed) {
    RngStream rng(seed, 0x5e1fc8ecULL);
    Tracker assoc("associativity", 1e-12);
    Tracker inv("inverse gives the unit", 1e-12);
    Tracker explog("exp/log round trip", 1e-12);
    Tracker dil("dilation homomorphism", 1e-12);
    Tracker hom("homogeneous norm scaling", 1e-12);
    Tracker grouplike("group-likeness of exp(Lie)", 0.0);
    Tracker reject("rejects symmetric level-2 bumps", 0.0);

    for (long c = 0; c < cases; ++c) {
        const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d_max)));
        const int N = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(N_max)));
        const AlgebraShape sh(d, N);

        const GroupElement a = random_group_like(sh, rng);
        const GroupElement b = random_group_like(sh, rng);
        const GroupElement g = random_group_like(sh, rng);
        assoc.observe(
            rel_defect(multiply(multiply(a, b), g).series, multiply(a, multiply(b, g)).series));
        inv.observe(rel_defect(multiply(g, inverse(g)).series, unit(sh).series));

        const LieSeries l = random_lie_series(sh, rng);
        explog.observe(rel_defect(log(exp(l)).series, l.series));

        const double lam = rng.uniform(-2.0, 2.0);
        dil.observe(rel_defect(dilate(lam, multiply(a, b)).series,
                               multiply(dilate(lam, a), dilate(lam, b)).series));
        const double hn = homogeneous_norm(g);
        hom.observe(std::abs(homogeneous_norm(dilate(lam, g)) - std::abs(lam) * hn) /
                    (1.0 + std::abs(lam) * hn));

        grouplike.observe_bool(is_group_like(g, 1e-8));
        if (N >= 2 && d >= 2) {
            GroupElement bumped = g;
            bumped.level(2)(1) += 2e-6;
            bumped.level(2)(sh.d) += 2e-6;  // symmetric bump on (1,2) and (2,1)
            reject.observe_bool(!is_group_like(bumped, 1e-8));
        }
    }
    return {assoc.result, inv.result,       explog.result, dil.result,
            hom.result,   grouplike.result, reject.result};
}

std::vector<CheckResult> signature_selfcheck(int d_max, int N_max, long cases,
                                             std::uint64_t seed) {
    RngStream rng(seed, 0xc4e11dULL);
    Tracker chen("Chen identity with random splits", 1e-12);
    Tracker reversal("reversal gives the inverse", 1e-12);
    Tracker scaling("spatial scaling acts as dilation", 1e-12);
    Tracker grouplike("signatures are group-like", 0.0);

    for (long c = 0; c < cases; ++c) {
        const int d = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d_max)));
        const int N = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(N_max)));
        const AlgebraShape sh(d, N);
        const PiecewiseLinearPath x = random_piecewise_linear_path(d, 6, rng);

        double s = rng.uniform(0.0, 1.0), t = rng.uniform(0.0, 1.0), u = rng.uniform(0.0, 1.0);
        if (s > t) std::swap(s, t);
        if (t > u) std::swap(t, u);
        if (s > t) std::swap(s, t);
        chen.observe(rel_defect(
            multiply(path_signature(x, s, t, sh), path_signature(x, t, u, sh)).series,
            path_signature(x, s, u, sh).series));

        const GroupElement sig = path_signature(x, sh);
        reversal.observe(rel_defect(path_signature(reverse(x), sh).series, inverse(sig).series));
        const double lam = rng.uniform(-2.0, 2.0);
        scaling.observe(
            rel_defect(path_signature(scale(lam, x), sh).series, dilate(lam, sig).series));
        grouplike.observe_bool(is_group_like(sig, 1e-8));
    }
    return {chen.result, reversal.result, scaling.result, grouplike.result};
}

}  // namespace rplab
