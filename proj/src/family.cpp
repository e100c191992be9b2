#include "canal/family.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "canal/ellipse_kappa.hpp"
#include "canal/errors.hpp"
#include "canal/quadrature.hpp"

namespace canal {

double kappa_dot(double t) { return ellipse_kappa_jet(t).d1; }

double torsion_rate(double t) {
    const double c2 = std::cos(t) * std::cos(t);
    const double c4 = c2 * c2;
    const double num =
        108.0 * (54.0 * c4 * c4 + 207.0 * c4 * c2 - 369.0 * c4 + 68.0 * c2 + 44.0);
    return num * std::pow(4.0 - 3.0 * c2, -5.5);
}

double coupling_constant() { return 8829.0 / 2048.0 * M_PI; }

double curvature_coupling_integral(double abs_tol) {
    return integrate(
        [](double t) {
            const EllipseKappaJet k = ellipse_kappa_jet(t);
            return k.d2 * k.value;
        },
        0.0, 2.0 * M_PI, abs_tol);
}

double torsion_coupling_integral(double abs_tol) {
    return -integrate(
        [](double t) { return ellipse_speed(t) * torsion_rate(t); }, 0.0,
        2.0 * M_PI, abs_tol);
}

double torsion_coupling_integral_fd(double h, double abs_tol) {
    const ClosedCurve plus = ClosedCurve::deformed_ellipse(h);
    const ClosedCurve minus = ClosedCurve::deformed_ellipse(-h);
    return -integrate(
        [&](double t) {
            const double dtau =
                (frenet(plus, t).torsion - frenet(minus, t).torsion) / (2.0 * h);
            return ellipse_speed(t) * dtau;
        },
        0.0, 2.0 * M_PI, abs_tol);
}

CanalSurface make_family_surface(const FamilyParams& params, int grid_n) {
    const ClosedCurve curve = ClosedCurve::deformed_ellipse(params.eps);
    const double margin = biregularity_margin(curve, grid_n);
    if (!(margin > 1e-9))
        throw ConstructionError("family surface: bi-regularity margin " +
                                std::to_string(margin) + " is not positive");
    // RadialFunction::modulated rejects r <= 0; the surface constructor
    // rejects |r'| >= 1. Both name the invariant in the message.
    return CanalSurface(curve, RadialFunction::modulated(params.rho, params.mu),
                        CanalSurface::Mode::report, grid_n);
}

double family_return_angle(double phi0, const FamilyParams& params,
                           double ode_tol) {
    const CanalSurface surface = make_family_surface(params);
    const FlowField flow(surface);
    return phi0 + return_map_point(flow, phi0, ode_tol).lift_delta;
}

VariationalReport verify_variational_derivatives(
    double rho, double h, const std::vector<double>& phi0_grid,
    double ode_tol) {
    if (!(h >= 1e-6 && h <= 1e-3))
        throw InputError("verify_variational_derivatives: h outside [1e-6, 1e-3]");
    const double C = coupling_constant();
    VariationalReport rep;
    rep.max_eps_rel_dev = 0.0;
    rep.max_mu_rel_dev = 0.0;
    rep.max_mu_abs_dev = 0.0;
    double d_eps_min = std::numeric_limits<double>::infinity();
    double d_eps_max = -std::numeric_limits<double>::infinity();
    for (double phi0 : phi0_grid) {
        VariationalReport::Row row;
        row.phi0 = phi0;
        row.d_eps = (family_return_angle(phi0, {h, rho, 0.0}, ode_tol) -
                     family_return_angle(phi0, {-h, rho, 0.0}, ode_tol)) /
                    (2.0 * h);
        row.d_mu = (family_return_angle(phi0, {0.0, rho, h}, ode_tol) -
                    family_return_angle(phi0, {0.0, rho, -h}, ode_tol)) /
                   (2.0 * h);
        rep.rows.push_back(row);
        rep.max_eps_rel_dev =
            std::max(rep.max_eps_rel_dev, std::abs(row.d_eps - C) / C);
        d_eps_min = std::min(d_eps_min, row.d_eps);
        d_eps_max = std::max(d_eps_max, row.d_eps);
        const double target = C * std::sin(phi0);
        if (std::abs(std::sin(phi0)) > 0.1)
            rep.max_mu_rel_dev = std::max(
                rep.max_mu_rel_dev, std::abs(row.d_mu - target) / std::abs(target));
        else
            rep.max_mu_abs_dev =
                std::max(rep.max_mu_abs_dev, std::abs(row.d_mu - target));
    }
    rep.eps_spread = d_eps_max - d_eps_min;
    return rep;
}

namespace {

double fold_gap(double rho, double mu, double eps, double ode_tol) {
    const CanalSurface surface = make_family_surface({eps, rho, mu});
    const FlowField flow(surface);
    return std::abs(fit_moebius(flow, ode_tol).map.trace()) - 2.0;
}

}  // namespace

FoldPoint locate_fold(double rho, double mu, double eps_lo, double eps_hi,
                      double ode_tol, double fold_tol) {
    double g_lo = fold_gap(rho, mu, eps_lo, ode_tol);
    double g_hi = fold_gap(rho, mu, eps_hi, ode_tol);
    if (g_lo * g_hi >= 0.0)
        throw BracketFailure(
            "fold bracket [" + std::to_string(eps_lo) + ", " +
            std::to_string(eps_hi) + "] has no sign change: g(lo)=" +
            std::to_string(g_lo) + ", g(hi)=" + std::to_string(g_hi));

    // Keep (pos, neg) endpoints; finish on the hyperbolic side, where the
    // double cycle is an honest fixed point of the flow.
    double pos = g_lo > 0.0 ? eps_lo : eps_hi;
    double g_pos = g_lo > 0.0 ? g_lo : g_hi;
    double neg = g_lo > 0.0 ? eps_hi : eps_lo;
    double g_neg = g_lo > 0.0 ? g_hi : g_lo;

    for (int it = 0; it < 200 && !(g_pos < fold_tol); ++it) {
        double cand = pos + g_pos * (neg - pos) / (g_pos - g_neg);  // secant
        const double lo = std::min(pos, neg), hi = std::max(pos, neg);
        if (!(cand > lo && cand < hi) || it % 3 == 2)
            cand = 0.5 * (pos + neg);  // periodic bisection keeps it honest
        const double g = fold_gap(rho, mu, cand, ode_tol);
        if (g >= 0.0) {
            pos = cand;
            g_pos = g;
        } else {
            neg = cand;
            g_neg = g;
        }
    }
    if (!(g_pos < fold_tol))
        throw Error("locate_fold: refinement stalled at residual " +
                    std::to_string(g_pos));

    const CanalSurface surface = make_family_surface({pos, rho, mu});
    const FlowField flow(surface);
    const ReturnMapReport rep = find_principal_cycles(flow, 1e-10);
    double phi_star = rep.fixed_points.empty() ? 0.0 : rep.fixed_points[0].phi;
    return FoldPoint{mu, pos, phi_star, g_pos};
}

FoldCurves trace_fold_curves(double rho, const std::vector<double>& mu_list,
                             double ode_tol, double fold_tol) {
    FoldCurves curves;
    for (double mu : mu_list) {
        if (!(mu > 0.0)) throw InputError("trace_fold_curves: mu must be > 0");
        curves.lower.push_back(
            locate_fold(rho, mu, -3.0 * mu, -mu / 3.0, ode_tol, fold_tol));
        curves.upper.push_back(
            locate_fold(rho, mu, mu / 3.0, 3.0 * mu, ode_tol, fold_tol));
    }
    return curves;
}

SweepGrid tongue_sweep(double rho, std::pair<double, double> eps_range,
                       std::pair<double, double> mu_range, int n_eps, int n_mu,
                       double ode_tol, int n_threads) {
    if (n_eps < 2 || n_mu < 2)
        throw InputError("tongue_sweep: grid sizes must be >= 2");
    SweepGrid grid;
    for (int i = 0; i < n_eps; ++i)
        grid.eps_values.push_back(eps_range.first +
                                  (eps_range.second - eps_range.first) * i /
                                      (n_eps - 1));
    for (int j = 0; j < n_mu; ++j)
        grid.mu_values.push_back(mu_range.first +
                                 (mu_range.second - mu_range.first) * j /
                                     (n_mu - 1));
    grid.cells.resize(static_cast<std::size_t>(n_eps) * n_mu);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t idx; (idx = next.fetch_add(1)) < grid.cells.size();) {
            const int i_eps = static_cast<int>(idx % n_eps);
            const int i_mu = static_cast<int>(idx / n_eps);
            SweepCell cell;
            cell.eps = grid.eps_values[i_eps];
            cell.mu = grid.mu_values[i_mu];
            try {
                const CanalSurface surface =
                    make_family_surface({cell.eps, rho, cell.mu});
                const FlowField flow(surface);
                const MoebiusFit fit = fit_moebius(flow, ode_tol);
                const ReturnMapReport rep =
                    classify_return_map(fit.map, fit.lift_delta0);
                cell.ok = true;
                cell.classification = rep.classification;
                cell.rotation_number = rep.rotation_number;
                cell.n_fixed_points = static_cast<int>(rep.fixed_points.size());
                cell.abs_trace = std::abs(fit.map.trace());
            } catch (const Error& e) {
                cell.error = e.what();
            }
            grid.cells[idx] = cell;
        }
    };

    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const unsigned want = n_threads > 0 ? static_cast<unsigned>(n_threads) : hw;
    const unsigned count =
        std::min<unsigned>(want, static_cast<unsigned>(grid.cells.size()));
    if (count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < count; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return grid;
}

}  // namespace canal
