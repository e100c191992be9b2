#pragma once
#include <utility>
#include <vector>

#include "canal/curve.hpp"
#include "canal/radial.hpp"

namespace canal {

/// Everything the envelope formulas need at one parameter value t:
/// the Frenet data of the center curve plus the radius and its arc-length
/// derivatives r' = dr/ds, r'' = d2r/ds2.
struct SurfaceFrame {
    FrenetData frenet;
    double r;
    double r_s;    ///< dr/ds
    double r_ss;   ///< d2r/ds2
    double sigma;  ///< sqrt(1 - r_s^2) > 0
};

/// Envelope of the sphere family of radius r(t) centered on the curve.
class CanalSurface {
  public:
    enum class Mode {
        report,  ///< construct even when the immersion margin is non-positive
        strict   ///< require immersion margin > 1e-9 on the check grid
    };

    CanalSurface(ClosedCurve curve, RadialFunction radial,
                 Mode mode = Mode::report, int grid_n = 2048);

    const ClosedCurve& curve() const { return curve_; }
    const RadialFunction& radial() const { return radial_; }
    double period() const { return curve_.period(); }

    /// Throws RadialDomainError if |dr/ds| >= 1 at t.
    SurfaceFrame frame(double t) const;

  private:
    ClosedCurve curve_;
    RadialFunction radial_;
};

/// alpha(t, phi) = c + r(-r' T + sigma (cos phi N + sin phi B)).
/// Lies on the sphere of center c(t) and radius r(t).
Vec3 canal_point(const CanalSurface& surface, double t, double phi);
Vec3 canal_point(const SurfaceFrame& fr, const Vec3& center, double phi);

/// Inward unit normal r' T - sigma (cos phi N + sin phi B) = (c - alpha)/r.
Vec3 canal_normal(const CanalSurface& surface, double t, double phi);
Vec3 canal_normal(const SurfaceFrame& fr, double phi);

/// First fundamental form coefficients in the (t, phi) parameter chart
/// (arc-length-chart values scaled by speed: E by s'^2, F by s').
struct FundamentalForm {
    double E;
    double F;
    double G;
    enum class Chart { parameter, arc_length } chart = Chart::parameter;
};

FundamentalForm first_fundamental_form(const CanalSurface& surface, double t,
                                       double phi);

/// EG - F^2 in the arc-length chart, from the closed form
/// r^4 [sigma kappa cos phi + r'' - (1 - r'^2)/r]^2.
double area_element_closed_form(const CanalSurface& surface, double t,
                                double phi);

/// The k1 denominator r kappa sigma cos phi + r r'' - (1 - r'^2);
/// negative wherever the surface is immersed.
double k1_denominator(const SurfaceFrame& fr, double phi);

/// Principal curvatures and directions. k2 = 1/r along the phi-circles;
/// k1 < k2 along the transverse field.
struct PrincipalData {
    double k1;
    double k2;
    Vec2 min_direction;  ///< (t, phi) chart components
    Vec2 max_direction;  ///< (0, 1)
};

/// Throws DegenerateDenominator if the k1 denominator is >= -1e-12.
PrincipalData principal_curvatures(const CanalSurface& surface, double t,
                                   double phi);

/// Rodrigues residuals |dN/dV + k V(alpha)| by central finite differences
/// along the principal directions; (res_min, res_max).
std::pair<double, double> rodrigues_residual(const CanalSurface& surface,
                                             double t, double phi);

/// Margin of an inequality over a uniform t-grid with its minimizer.
struct MarginReport {
    double margin;
    double argmin_t;
};

/// min over the grid of (1 - r'^2 - r r'')/(r sigma) - kappa.
/// Positive iff the envelope is an immersion on the grid.
MarginReport immersion_margin(const CanalSurface& surface, int grid_n = 2048);

/// min over the grid of |(1 - r'^2 - 2 r r'')/(2 r sigma)| - kappa.
/// Positive iff the surface is umbilic-free by the closed-form criterion.
MarginReport umbilic_free_margin(const CanalSurface& surface, int grid_n = 2048);

/// Solutions (t, phi) of cos phi = (1 - r'^2 - 2 r r'')/(2 kappa r sigma) on
/// the grid; empty when the umbilic-free margin is positive everywhere.
std::vector<std::pair<double, double>> umbilic_locus(const CanalSurface& surface,
                                                     int grid_n = 2048);

}  // namespace canal
