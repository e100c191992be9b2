#pragma once
#include <utility>
#include <vector>

#include "canal/moebius.hpp"
#include "canal/surface.hpp"

namespace canal {

/// d(kappa)/dt of the base ellipse: -18 cos t sin t / (4 - 3 cos^2 t)^{5/2}.
/// Higher derivatives come from ellipse_kappa_jet.
double kappa_dot(double t);

/// First-order torsion response of the deformed ellipse: d(tau)/d(eps) at
/// eps = 0, closed form
/// 108 (54 c^8 + 207 c^6 - 369 c^4 + 68 c^2 + 44) / (4 - 3 c^2)^{11/2}.
double torsion_rate(double t);

/// The coupling constant both variational integrals evaluate to:
/// 8829 pi / 2048.
double coupling_constant();

/// integral over one period of kappa_ddot * kappa; equals -coupling_constant
/// (it is -integral of kappa_dot^2 by parts). Drives dPi/dmu.
double curvature_coupling_integral(double abs_tol = 1e-12);

/// -integral over one period of s'(t) * torsion_rate(t); equals
/// +coupling_constant. Drives dPi/deps. The torsion_rate polynomial cancels
/// to ~1e-11 near t = 0, which caps the usable tolerance.
double torsion_coupling_integral(double abs_tol = 1e-10);

/// Same integral with d(tau)/d(eps) taken by central differences of the
/// numerically computed torsion of the deformed ellipse (step h). The FD
/// noise floor (~1e-10 per point) caps the usable tolerance.
double torsion_coupling_integral_fd(double h = 1e-5, double abs_tol = 1e-8);

/// Three-parameter surface family: deformed ellipse (amplitude eps) with
/// radius rho + mu * kappa_dot(t).
struct FamilyParams {
    double eps = 0.0;
    double rho = 0.1;
    double mu = 0.0;
};

/// Throws ConstructionError naming the failed invariant
/// (r <= 0, |r'| >= 1, or bi-regularity).
CanalSurface make_family_surface(const FamilyParams& params, int grid_n = 2048);

/// Lifted return angle Pi(phi0) = phi0 + lift of the family flow.
double family_return_angle(double phi0, const FamilyParams& params,
                           double ode_tol = 1e-10);

/// Central-difference check of dPi/deps ~= C (phi0-independent) and
/// dPi/dmu ~= C sin(phi0) at (eps, mu) = (0, 0).
struct VariationalReport {
    struct Row {
        double phi0;
        double d_eps;  ///< [Pi(phi0, +h, 0) - Pi(phi0, -h, 0)] / 2h
        double d_mu;   ///< [Pi(phi0, 0, +h) - Pi(phi0, 0, -h)] / 2h
    };
    std::vector<Row> rows;
    double max_eps_rel_dev;   ///< max |d_eps - C| / C
    double eps_spread;        ///< max d_eps - min d_eps over the grid
    double max_mu_rel_dev;    ///< max |d_mu - C sin| / |C sin| where |sin| > 0.1
    double max_mu_abs_dev;    ///< max |d_mu - C sin| where |sin| <= 0.1
};

VariationalReport verify_variational_derivatives(
    double rho, double h, const std::vector<double>& phi0_grid,
    double ode_tol = 1e-10);

/// Parameter point where the two principal cycles merge into a double one.
struct FoldPoint {
    double mu;
    double eps;
    double phi_star;  ///< angle of the double cycle
    double residual;  ///< |trace| - 2 at the located point (>= 0, < fold_tol)
};

/// Locate |trace| = 2 inside [eps_lo, eps_hi] by bisection with secant
/// refinement, ending on the hyperbolic side with residual in [0, fold_tol).
/// Throws BracketFailure (with endpoint values) if the bracket has no sign
/// change; brackets are never widened.
FoldPoint locate_fold(double rho, double mu, double eps_lo, double eps_hi,
                      double ode_tol = 1e-12, double fold_tol = 1e-9);

struct FoldCurves {
    std::vector<FoldPoint> lower;  ///< eps_1(mu), near -mu
    std::vector<FoldPoint> upper;  ///< eps_2(mu), near +mu
};

/// Trace both fold curves over the given mu values using the brackets
/// [-3 mu, -mu/3] and [mu/3, 3 mu].
FoldCurves trace_fold_curves(double rho, const std::vector<double>& mu_list,
                             double ode_tol = 1e-12, double fold_tol = 1e-9);

/// One classified cell of a parameter-plane sweep.
struct SweepCell {
    double eps = 0.0;
    double mu = 0.0;
    bool ok = false;
    MapClass classification = MapClass::identity;
    std::optional<double> rotation_number;
    int n_fixed_points = 0;
    double abs_trace = 0.0;
    std::string error;  ///< non-empty when the cell failed; sweep continues
};

struct SweepGrid {
    std::vector<double> eps_values;
    std::vector<double> mu_values;
    std::vector<SweepCell> cells;  ///< mu-major: cells[i_mu * n_eps + i_eps]

    const SweepCell& cell(int i_eps, int i_mu) const {
        return cells[static_cast<std::size_t>(i_mu) * eps_values.size() + i_eps];
    }
};

/// Classify the return map over a uniform (eps, mu) grid. Cells are
/// independent and evaluated concurrently; per-cell errors are recorded in
/// the cell. n_threads = 0 picks the hardware concurrency.
SweepGrid tongue_sweep(double rho, std::pair<double, double> eps_range,
                       std::pair<double, double> mu_range, int n_eps, int n_mu,
                       double ode_tol = 1e-10, int n_threads = 0);

}  // namespace canal
