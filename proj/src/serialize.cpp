#include "rplab/serialize.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rplab {

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return {buf, res.ptr};
}

nlohmann::json to_json(const GroupElement& g) {
    nlohmann::json j;
    j["d"] = g.shape().d;
    j["N"] = g.shape().N;
    nlohmann::json levels = nlohmann::json::array();
    levels.push_back(g.level(0)(0));
    for (int k = 1; k <= g.shape().N; ++k) {
        nlohmann::json blk = nlohmann::json::array();
        for (Eigen::Index i = 0; i < g.level(k).size(); ++i) blk.push_back(g.level(k)(i));
        levels.push_back(std::move(blk));
    }
    j["levels"] = std::move(levels);
    return j;
}

GroupElement group_element_from_json(const nlohmann::json& j) {
    const AlgebraShape shape(j.at("d").get<int>(), j.at("N").get<int>());
    const auto& levels = j.at("levels");
    if (!levels.is_array() || static_cast<int>(levels.size()) != shape.N + 1) {
        throw std::invalid_argument("group element json: wrong number of levels");
    }
    GroupElement g(shape);
    if (std::abs(levels[0].get<double>() - 1.0) > 0.0) {
        throw std::invalid_argument("group element json: level 0 must be 1");
    }
    for (int k = 1; k <= shape.N; ++k) {
        const auto& blk = levels[static_cast<std::size_t>(k)];
        if (static_cast<Eigen::Index>(blk.size()) != shape.level_size(k)) {
            throw std::invalid_argument("group element json: level block of wrong size");
        }
        for (Eigen::Index i = 0; i < g.level(k).size(); ++i) {
            g.level(k)(i) = blk[static_cast<std::size_t>(i)].get<double>();
        }
    }
    return g;
}

nlohmann::json to_json(const RoughPathGrid& grid, const std::string& skeleton_ref) {
    nlohmann::json j;
    j["p"] = grid.p;
    nlohmann::json times = nlohmann::json::array();
    for (Eigen::Index i = 0; i < grid.times.size(); ++i) times.push_back(grid.times(i));
    j["times"] = std::move(times);
    nlohmann::json incs = nlohmann::json::array();
    for (const auto& g : grid.increments) incs.push_back(to_json(g));
    j["increments"] = std::move(incs);
    if (!skeleton_ref.empty()) j["skeleton"] = skeleton_ref;
    return j;
}

RoughPathGrid grid_from_json(const nlohmann::json& j) {
    RoughPathGrid grid;
    grid.p = j.at("p").get<double>();
    const auto& times = j.at("times");
    grid.times.resize(static_cast<Eigen::Index>(times.size()));
    for (Eigen::Index i = 0; i < grid.times.size(); ++i) {
        grid.times(i) = times[static_cast<std::size_t>(i)].get<double>();
    }
    for (const auto& inc : j.at("increments")) {
        grid.increments.push_back(group_element_from_json(inc));
    }
    if (grid.increments.empty() || grid.times.size() != static_cast<Eigen::Index>(
                                                            grid.increments.size()) + 1) {
        throw std::invalid_argument("grid json: times/increments size mismatch");
    }
    grid.shape = grid.increments[0].shape();
    return grid;
}

nlohmann::json to_json(const CCBounds& bounds, const std::string& path_ref) {
    nlohmann::json j;
    j["lower"] = bounds.lower;
    j["upper"] = bounds.upper;
    j["m"] = bounds.segments;
    j["path"] = path_ref;
    return j;
}

namespace {

Eigen::MatrixXd matrix_from_rowmajor(const nlohmann::json& arr, Eigen::Index rows,
                                     Eigen::Index cols) {
    if (static_cast<Eigen::Index>(arr.size()) != rows * cols) {
        throw std::invalid_argument("field json: matrix of wrong size");
    }
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = arr[static_cast<std::size_t>(r * cols + c)].get<double>();
        }
    }
    return m;
}

}  // namespace

VectorFieldFamily field_family_from_json(const nlohmann::json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (j.contains("V0")) {
        throw std::invalid_argument("field json: drift fields are unsupported");
    }
    if (kind == "registry") {
        return VectorFieldFamily::registry(j.at("name").get<std::string>());
    }
    const int e = j.at("e").get<int>();
    const int d = j.at("d").get<int>();
    if (kind == "linear_affine") {
        std::vector<Eigen::MatrixXd> A;
        std::vector<Eigen::VectorXd> b;
        for (const auto& Ai : j.at("A")) A.push_back(matrix_from_rowmajor(Ai, e, e));
        for (const auto& bi : j.at("b")) {
            b.push_back(Eigen::VectorXd(matrix_from_rowmajor(bi, e, 1)));
        }
        if (static_cast<int>(A.size()) != d) {
            throw std::invalid_argument("field json: need one matrix per driving direction");
        }
        return VectorFieldFamily::linear_affine(std::move(A), std::move(b));
    }
    if (kind == "polynomial") {
        std::vector<std::vector<Eigen::MatrixXd>> coeffs;
        for (const auto& field : j.at("fields")) {
            std::vector<Eigen::MatrixXd> per_degree;
            Eigen::Index cols = 1;
            for (const auto& C : field.at("coeffs")) {
                per_degree.push_back(matrix_from_rowmajor(C, e, cols));
                cols *= e;
            }
            coeffs.push_back(std::move(per_degree));
        }
        if (static_cast<int>(coeffs.size()) != d) {
            throw std::invalid_argument("field json: need one field per driving direction");
        }
        return VectorFieldFamily::polynomial(std::move(coeffs));
    }
    throw std::invalid_argument("field json: unknown kind " + kind);
}

void write_path_csv(std::ostream& os, const PiecewiseLinearPath& path) {
    os << "t";
    for (int c = 0; c < path.dim(); ++c) os << ",x" << (c + 1);
    os << "\n";
    for (Eigen::Index i = 0; i < path.times.size(); ++i) {
        os << format_double(path.times(i));
        for (int c = 0; c < path.dim(); ++c) os << "," << format_double(path.points(c, i));
        os << "\n";
    }
}

PiecewiseLinearPath read_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("t,", 0) != 0) {
        throw std::invalid_argument("path csv: missing t,x1,... header");
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t next = line.find(',', pos);
            const std::string cell =
                line.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
            row.push_back(std::stod(cell));
            if (next == std::string::npos) break;
            pos = next + 1;
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("path csv: no data rows");
    const auto cols = rows[0].size();
    Eigen::VectorXd t(static_cast<Eigen::Index>(rows.size()));
    Eigen::MatrixXd p(static_cast<Eigen::Index>(cols - 1), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) throw std::invalid_argument("path csv: ragged rows");
        t(static_cast<Eigen::Index>(i)) = rows[i][0];
        for (std::size_t c = 1; c < cols; ++c) {
            p(static_cast<Eigen::Index>(c - 1), static_cast<Eigen::Index>(i)) = rows[i][c];
        }
    }
    return {t, p};
}

void write_rate_csv(std::ostream& os, const RateReport& r) {
    os << "scale,error,fit\n";
    for (Eigen::Index i = 0; i < r.interval_lengths.size(); ++i) {
        const double fit = r.degenerate
                               ? 0.0
                               : std::exp(r.fitted_intercept +
                                          r.fitted_slope * std::log(r.interval_lengths(i)));
        os << format_double(r.interval_lengths(i)) << "," << format_double(r.errors(i)) << ","
           << format_double(fit) << "\n";
    }
}

void write_rate_plotdata(std::ostream& os, const RateReport& r) {
    os << "log_length,log_error,fit\n";
    for (Eigen::Index i = 0; i < r.interval_lengths.size(); ++i) {
        if (r.errors(i) <= 0.0) continue;
        const double ll = std::log(r.interval_lengths(i));
        os << format_double(ll) << "," << format_double(std::log(r.errors(i))) << ","
           << format_double(r.fitted_intercept + r.fitted_slope * ll) << "\n";
    }
}

nlohmann::json rate_summary(const RateReport& r) {
    nlohmann::json j;
    j["fitted_slope"] = r.fitted_slope;
    j["fitted_intercept"] = r.fitted_intercept;
    j["theta_target"] = r.theta_target;
    j["empirical_constant"] = r.empirical_constant;
    j["degenerate"] = r.degenerate;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

void write_tail_csv(std::ostream& os, const TailReport& r) {
    os << "t,R,count,p_hat,ci_halfwidth,p_hat_hoelder\n";
    for (Eigen::Index ti = 0; ti < r.t_grid.size(); ++ti) {
        for (Eigen::Index ri = 0; ri < r.r_grid.size(); ++ri) {
            os << format_double(r.t_grid(ti)) << "," << format_double(r.r_grid(ri)) << ","
               << format_double(r.counts(ti, ri)) << "," << format_double(r.probabilities(ti, ri))
               << "," << format_double(r.ci_half_widths(ti, ri)) << ","
               << format_double(r.probabilities_hoelder(ti, ri)) << "\n";
        }
    }
}

void write_tail_plotdata(std::ostream& os, const TailReport& r) {
    os << "t,R,p_hat,ci_halfwidth\n";
    for (Eigen::Index ti = 0; ti < r.t_grid.size(); ++ti) {
        for (Eigen::Index ri = 0; ri < r.r_grid.size(); ++ri) {
            os << format_double(r.t_grid(ti)) << "," << format_double(r.r_grid(ri)) << ","
               << format_double(r.probabilities(ti, ri)) << ","
               << format_double(r.ci_half_widths(ti, ri)) << "\n";
        }
    }
}

nlohmann::json tail_summary(const TailReport& r) {
    nlohmann::json j;
    j["samples"] = r.samples;
    j["castell_exponent"] = r.castell_exponent;
    j["monotone_pass"] = r.monotone_pass;
    j["envelope_pass"] = r.envelope_pass;
    j["collapse_pass"] = r.collapse_pass;
    j["max_collapse_gap"] = r.max_collapse_gap;
    return j;
}

void write_lq_csv(std::ostream& os, const LqReport& r) {
    os << "n,q,moment_norm,ci_halfwidth\n";
    for (std::size_t li = 0; li < r.n_levels.size(); ++li) {
        for (std::size_t qi = 0; qi < r.q_list.size(); ++qi) {
            os << r.n_levels[li] << "," << format_double(r.q_list[qi]) << ","
               << format_double(r.moment_norms(static_cast<Eigen::Index>(li),
                                               static_cast<Eigen::Index>(qi)))
               << ","
               << format_double(
                      r.ci_half(static_cast<Eigen::Index>(li), static_cast<Eigen::Index>(qi)))
               << "\n";
        }
    }
}

nlohmann::json lq_summary(const LqReport& r) {
    nlohmann::json j;
    j["samples"] = r.samples;
    j["monotone_pass"] = r.monotone_pass;
    return j;
}

void write_gamma_csv(std::ostream& os, const GammaBoundReport& r) {
    os << "b,log_gamma,log_refined_bound,log_naive_bound\n";
    for (Eigen::Index i = 0; i < r.b_grid.size(); ++i) {
        os << format_double(r.b_grid(i)) << "," << format_double(r.log_gamma(i)) << ","
           << format_double(r.log_refined(i)) << "," << format_double(r.log_naive(i)) << "\n";
    }
}

nlohmann::json gamma_summary(const GammaBoundReport& r) {
    nlohmann::json j;
    j["bound_holds"] = r.bound_holds;
    j["quadratic_coefficient"] = r.quadratic_coefficient;
    j["quadratic_ok"] = r.quadratic_ok;
    return j;
}

nlohmann::json gauss_tail_summary(const GaussTailReport& r) {
    nlohmann::json j;
    j["samples"] = r.samples;
    j["degenerate"] = r.degenerate;
    j["alpha_hat"] = r.alpha_hat;
    j["quad_coefficient"] = r.quad_coefficient;
    j["moment_growth_slope"] = r.moment_growth_slope;
    j["pass"] = r.pass;
    return j;
}

nlohmann::json growth_summary(const ConstantGrowthReport& r) {
    nlohmann::json j;
    j["monotone"] = r.monotone;
    j["quadratic_coefficient"] = r.quadratic_coefficient;
    j["cubic_coefficient"] = r.cubic_coefficient;
    j["cubic_check_ran"] = r.cubic_check_ran;
    j["at_most_quadratic"] = r.at_most_quadratic;
    return j;
}

}  // namespace rplab
