#include "rplab/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace rplab {

LinearFit fit_line(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const Eigen::VectorXd c = polyfit(x, y, 1);
    return {c(1), c(0)};
}

Eigen::VectorXd polyfit(const Eigen::VectorXd& x, const Eigen::VectorXd& y, int degree) {
    if (x.size() != y.size()) throw std::invalid_argument("polyfit: size mismatch");
    if (x.size() < degree + 1) throw std::invalid_argument("polyfit: underdetermined");
    Eigen::MatrixXd m(x.size(), degree + 1);
    for (Eigen::Index r = 0; r < x.size(); ++r) {
        double pw = 1.0;
        for (int c = 0; c <= degree; ++c) {
            m(r, c) = pw;
            pw *= x(r);
        }
    }
    return m.colPivHouseholderQr().solve(y);
}

double mean(const Eigen::VectorXd& v) { return v.mean(); }

double variance(const Eigen::VectorXd& v) {
    if (v.size() < 2) return 0.0;
    const double mu = v.mean();
    return (v.array() - mu).square().sum() / static_cast<double>(v.size() - 1);
}

BinomialEstimate binomial_estimate(long successes, long trials, double z) {
    if (trials <= 0) throw std::invalid_argument("binomial_estimate: need trials > 0");
    BinomialEstimate est;
    est.p_hat = static_cast<double>(successes) / static_cast<double>(trials);
    if (successes == 0 || successes == trials) {
        est.half_width = 3.0 / static_cast<double>(trials);  // rule of three
    } else {
        est.half_width = z * std::sqrt(est.p_hat * (1.0 - est.p_hat) /
                                       static_cast<double>(trials));
    }
    return est;
}

double quantile_sorted(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw std::invalid_argument("quantile: empty data");
    if (q <= 0.0) return sorted.front();
    if (q >= 1.0) return sorted.back();
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(pos);
    const double w = pos - static_cast<double>(lo);
    if (lo + 1 >= sorted.size()) return sorted.back();
    return (1.0 - w) * sorted[lo] + w * sorted[lo + 1];
}

}  // namespace rplab
