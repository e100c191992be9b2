#include "canal/surface.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "canal/errors.hpp"

namespace canal {

CanalSurface::CanalSurface(ClosedCurve curve, RadialFunction radial, Mode mode,
                           int grid_n)
    : curve_(std::move(curve)), radial_(std::move(radial)) {
    if (curve_.period() != radial_.period())
        throw ConstructionError("surface: curve and radial periods differ");
    // |dr/ds| < 1 on the check grid; frame() rejects pointwise as well.
    for (int i = 0; i < grid_n; ++i) {
        const double t = period() * static_cast<double>(i) / grid_n;
        try {
            (void)frame(t);
        } catch (const BiRegularityFailure& e) {
            throw ConstructionError(std::string("surface: bi-regularity: ") +
                                    e.what());
        } catch (const RadialDomainError&) {
            throw ConstructionError(
                "surface: |r'| >= 1 on check grid (t=" + std::to_string(t) +
                "); the sphere family has no real envelope there");
        }
    }
    if (mode == Mode::strict) {
        const MarginReport rep = immersion_margin(*this, grid_n);
        if (!(rep.margin > 1e-9))
            throw ConstructionError(
                "surface: immersion margin " + std::to_string(rep.margin) +
                " is not positive (t=" + std::to_string(rep.argmin_t) + ")");
    }
}

SurfaceFrame CanalSurface::frame(double t) const {
    SurfaceFrame fr;
    const CurveJet jet = curve_.eval(t);
    fr.frenet = frenet(jet);
    const RadialFunction::Jet rj = radial_.eval(t);
    const double sdot = fr.frenet.speed;
    const double sddot = jet.vel.dot(jet.acc) / sdot;
    fr.r = rj.r;
    fr.r_s = rj.rdot / sdot;
    fr.r_ss = (rj.rddot - fr.r_s * sddot) / (sdot * sdot);
    const double one_m = 1.0 - fr.r_s * fr.r_s;
    if (!(one_m > 0.0))
        throw RadialDomainError("surface: |dr/ds| >= 1 at t=" +
                                std::to_string(t));
    fr.sigma = std::sqrt(one_m);
    return fr;
}

Vec3 canal_point(const SurfaceFrame& fr, const Vec3& center, double phi) {
    const Vec3 radial_dir = std::cos(phi) * fr.frenet.normal +
                            std::sin(phi) * fr.frenet.binormal;
    return center + fr.r * (-fr.r_s * fr.frenet.tangent + fr.sigma * radial_dir);
}

Vec3 canal_point(const CanalSurface& surface, double t, double phi) {
    const SurfaceFrame fr = surface.frame(t);
    return canal_point(fr, surface.curve().eval(t).point, phi);
}

Vec3 canal_normal(const SurfaceFrame& fr, double phi) {
    const Vec3 radial_dir = std::cos(phi) * fr.frenet.normal +
                            std::sin(phi) * fr.frenet.binormal;
    return fr.r_s * fr.frenet.tangent - fr.sigma * radial_dir;
}

Vec3 canal_normal(const CanalSurface& surface, double t, double phi) {
    return canal_normal(surface.frame(t), phi);
}

FundamentalForm first_fundamental_form(const CanalSurface& surface, double t,
                                       double phi) {
    const SurfaceFrame fr = surface.frame(t);
    const double r = fr.r, rs = fr.r_s, rss = fr.r_ss, sig = fr.sigma;
    const double kap = fr.frenet.curvature, tau = fr.frenet.torsion;
    const double cph = std::cos(phi), sph = std::sin(phi);

    // Components of d(alpha)/ds in the Frenet frame, with cos(theta) = -r',
    // sin(theta) = sigma, theta' = r''/sigma substituted.
    const double a1 = 1.0 - rs * rs - r * rss - r * kap * sig * cph;
    const double a2 = rs * cph * (sig - r * rss / sig) - r * tau * sig * sph -
                      r * kap * rs;
    const double a3 = rs * sph * (sig - r * rss / sig) + r * tau * sig * cph;

    const double sdot = fr.frenet.speed;
    FundamentalForm ff;
    ff.E = (a1 * a1 + a2 * a2 + a3 * a3) * sdot * sdot;
    ff.F = (tau * r * r * sig * sig + kap * rs * r * r * sig * sph) * sdot;
    ff.G = r * r * sig * sig;
    ff.chart = FundamentalForm::Chart::parameter;
    return ff;
}

double area_element_closed_form(const CanalSurface& surface, double t,
                                double phi) {
    const SurfaceFrame fr = surface.frame(t);
    const double bracket = fr.sigma * fr.frenet.curvature * std::cos(phi) +
                           fr.r_ss - (1.0 - fr.r_s * fr.r_s) / fr.r;
    const double r2 = fr.r * fr.r;
    return r2 * r2 * bracket * bracket;
}

double k1_denominator(const SurfaceFrame& fr, double phi) {
    return fr.r * fr.frenet.curvature * fr.sigma * std::cos(phi) +
           fr.r * fr.r_ss - (1.0 - fr.r_s * fr.r_s);
}

PrincipalData principal_curvatures(const CanalSurface& surface, double t,
                                   double phi) {
    const SurfaceFrame fr = surface.frame(t);
    const double den = k1_denominator(fr, phi);
    if (!(den < -1e-12))
        throw DegenerateDenominator(
            "principal_curvatures: k1 denominator " + std::to_string(den) +
            " is not negative at (t=" + std::to_string(t) +
            ", phi=" + std::to_string(phi) + ")");
    PrincipalData pd;
    pd.k2 = 1.0 / fr.r;
    const double num =
        fr.frenet.curvature * fr.sigma * std::cos(phi) + fr.r_ss;
    pd.k1 = num / den;
    const double w_s = -(fr.frenet.torsion +
                         fr.r_s / fr.sigma * fr.frenet.curvature * std::sin(phi));
    pd.min_direction = Vec2(1.0 / fr.frenet.speed, w_s);
    pd.max_direction = Vec2(0.0, 1.0);
    return pd;
}

std::pair<double, double> rodrigues_residual(const CanalSurface& surface,
                                             double t, double phi) {
    const PrincipalData pd = principal_curvatures(surface, t, phi);
    const double h = 1e-5;

    // Maximal direction: the phi-circle.
    const Vec3 dN_dphi = (canal_normal(surface, t, phi + h) -
                          canal_normal(surface, t, phi - h)) /
                         (2.0 * h);
    const Vec3 dA_dphi =
        (canal_point(surface, t, phi + h) - canal_point(surface, t, phi - h)) /
        (2.0 * h);
    const double res_max = (dN_dphi + pd.k2 * dA_dphi).norm();

    // Minimal direction: straight-line chart step along (1, w), w = dphi/dt.
    const double w = pd.min_direction[1] / pd.min_direction[0];
    const Vec3 dN_dV = (canal_normal(surface, t + h, phi + h * w) -
                        canal_normal(surface, t - h, phi - h * w)) /
                       (2.0 * h);
    const Vec3 dA_dV = (canal_point(surface, t + h, phi + h * w) -
                        canal_point(surface, t - h, phi - h * w)) /
                       (2.0 * h);
    const double res_min = (dN_dV + pd.k1 * dA_dV).norm();
    return {res_min, res_max};
}

namespace {

template <class F>
MarginReport grid_min(const CanalSurface& surface, int grid_n, const F& f) {
    if (grid_n < 64) throw InputError("margin check: grid_n must be >= 64");
    MarginReport rep{std::numeric_limits<double>::infinity(), 0.0};
    for (int i = 0; i < grid_n; ++i) {
        const double t = surface.period() * static_cast<double>(i) / grid_n;
        const double v = f(surface.frame(t));
        if (v < rep.margin) {
            rep.margin = v;
            rep.argmin_t = t;
        }
    }
    return rep;
}

}  // namespace

MarginReport immersion_margin(const CanalSurface& surface, int grid_n) {
    return grid_min(surface, grid_n, [](const SurfaceFrame& fr) {
        const double bound =
            (1.0 - fr.r_s * fr.r_s - fr.r * fr.r_ss) / (fr.r * fr.sigma);
        return bound - fr.frenet.curvature;
    });
}

MarginReport umbilic_free_margin(const CanalSurface& surface, int grid_n) {
    return grid_min(surface, grid_n, [](const SurfaceFrame& fr) {
        const double bound = std::abs(
            (1.0 - fr.r_s * fr.r_s - 2.0 * fr.r * fr.r_ss) /
            (2.0 * fr.r * fr.sigma));
        return bound - fr.frenet.curvature;
    });
}

std::vector<std::pair<double, double>> umbilic_locus(const CanalSurface& surface,
                                                     int grid_n) {
    if (grid_n < 64) throw InputError("umbilic_locus: grid_n must be >= 64");
    std::vector<std::pair<double, double>> locus;
    for (int i = 0; i < grid_n; ++i) {
        const double t = surface.period() * static_cast<double>(i) / grid_n;
        const SurfaceFrame fr = surface.frame(t);
        const double rhs =
            (1.0 - fr.r_s * fr.r_s - 2.0 * fr.r * fr.r_ss) /
            (2.0 * fr.frenet.curvature * fr.r * fr.sigma);
        if (std::abs(rhs) <= 1.0) {
            const double phi = std::acos(rhs);
            locus.emplace_back(t, phi);
            if (phi > 0.0 && phi < M_PI)
                locus.emplace_back(t, 2.0 * M_PI - phi);
        }
    }
    return locus;
}

}  // namespace canal
