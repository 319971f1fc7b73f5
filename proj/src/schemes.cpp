#include "rplab/schemes.hpp"

#include <sstream>
#include <stdexcept>

namespace rplab {

Trajectory euler_scheme_solve(const VectorFieldFamily& V, int N, const RoughPathGrid& x,
                              const Eigen::VectorXd& y0) {
    if (x.shape.N < N) throw std::invalid_argument("euler scheme: grid depth below N");
    Trajectory traj;
    traj.scheme = "euler-" + std::to_string(N);
    traj.times = x.times;
    traj.states.resize(y0.size(), x.times.size());
    Eigen::VectorXd y = y0;
    traj.states.col(0) = y;
    for (Eigen::Index k = 0; k < x.cell_count(); ++k) {
        y += euler_increment(V, N, x.increments[k], y).value;
        traj.states.col(k + 1) = y;
    }
    return traj;
}

Trajectory geodesic_scheme_solve(const VectorFieldFamily& V, int N, const RoughPathGrid& x,
                                 const GeodesicFamilyConfig& cfg, const Eigen::VectorXd& y0,
                                 double ode_tol) {
    if (x.shape.N < N) throw std::invalid_argument("geodesic scheme: grid depth below N");
    const auto cells = geodesic_family(x, cfg);
    Trajectory traj;
    traj.scheme = "geodesic-" + std::to_string(N);
    traj.times = x.times;
    traj.states.resize(y0.size(), x.times.size());
    Eigen::VectorXd y = y0;
    traj.states.col(0) = y;
    for (Eigen::Index k = 0; k < x.cell_count(); ++k) {
        if (!cells[k].within_budget) {
            std::ostringstream w;
            w << "cell " << k << ": length " << cells[k].length << " exceeds budget "
              << cells[k].budget;
            traj.warnings.push_back(w.str());
        }
        y = ode_endpoint(V, y, cells[k].path, ode_tol);
        traj.states.col(k + 1) = y;
    }
    return traj;
}

double paired_one_step_defect(const VectorFieldFamily& V, int N, const RoughPathGrid& x,
                              const GeodesicFamilyConfig& cfg, const Eigen::VectorXd& y0,
                              double ode_tol) {
    const auto cells = geodesic_family(x, cfg);
    const Trajectory base = euler_scheme_solve(V, N, x, y0);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < x.cell_count(); ++k) {
        const Eigen::VectorXd y = base.states.col(k);
        const Eigen::VectorXd via_euler = y + euler_increment(V, N, x.increments[k], y).value;
        const Eigen::VectorXd via_geo = ode_endpoint(V, y, cells[k].path, ode_tol);
        worst = std::max(worst, (via_euler - via_geo).norm());
    }
    return worst;
}

}  // namespace rplab
