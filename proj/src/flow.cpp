#include "canal/flow.hpp"

#include <cmath>

#include "canal/errors.hpp"

namespace canal {

double FlowField::rhs(double t, double phi) const {
    const SurfaceFrame fr = surface_->frame(t);
    return -fr.frenet.speed *
           (fr.frenet.torsion +
            fr.r_s / fr.sigma * fr.frenet.curvature * std::sin(phi));
}

double wrap_angle(double phi) {
    double r = std::fmod(phi, 2.0 * M_PI);
    if (r < 0.0) r += 2.0 * M_PI;
    if (r >= 2.0 * M_PI) r = 0.0;  // the += above can round up to 2 pi
    return r + 0.0;                // clears -0.0
}

Trajectory integrate_principal_line(const FlowField& flow, double t0,
                                    double phi0, double t1, double tol) {
    if (!(t1 > t0)) throw InputError("integrate_principal_line: t1 must be > t0");
    if (!(tol >= 1e-13 && tol <= 1e-6))
        throw InputError("integrate_principal_line: tol outside [1e-13, 1e-6]");
    Trajectory traj;
    auto rhs = [&](double t, double phi) { return flow.rhs(t, phi); };
    integrate_ode(rhs, t0, phi0, t1, tol, traj.stats, [&](double t, double phi) {
        traj.t.push_back(t);
        traj.phi.push_back(phi);
    });
    return traj;
}

ReturnPoint return_map_point(const FlowField& flow, double phi0, double tol) {
    if (!(tol >= 1e-13 && tol <= 1e-6))
        throw InputError("return_map_point: tol outside [1e-13, 1e-6]");
    OdeStats stats;
    auto rhs = [&](double t, double phi) { return flow.rhs(t, phi); };
    const double phi_end =
        integrate_ode(rhs, 0.0, phi0, flow.period(), tol, stats);
    return ReturnPoint{wrap_angle(phi_end), phi_end - phi0};
}

}  // namespace canal
