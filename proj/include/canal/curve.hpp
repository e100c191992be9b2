#pragma once
#include <Eigen/Dense>
#include <functional>
#include <string>
#include <vector>

namespace canal {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

/// Value and first three parameter derivatives of a space curve at one t.
struct CurveJet {
    Vec3 point;
    Vec3 vel;
    Vec3 acc;
    Vec3 jerk;
};

/// One coordinate of a curve as a finite Fourier series over period T:
/// a0 + sum_k ( cos_coeffs[k-1] cos(k w t) + sin_coeffs[k-1] sin(k w t) ),
/// w = 2 pi / T. Differentiated term by term.
struct FourierSeries {
    double a0 = 0.0;
    std::vector<double> cos_coeffs;
    std::vector<double> sin_coeffs;

    /// value, d/dt, d2/dt2, d3/dt3 at t given angular base frequency w.
    Eigen::Vector4d eval(double t, double w) const;
};

/// Smooth closed space curve with analytic derivatives to order three.
/// Evaluators are exactly T-periodic (t is reduced mod T before evaluation).
class ClosedCurve {
  public:
    /// (a cos t, b sin t, 0), period 2 pi.
    static ClosedCurve ellipse(double a = 2.0, double b = 1.0);

    /// Unit-speed circle of the given radius, period 2 pi radius.
    static ClosedCurve circle(double radius);

    /// (2 cos t, sin t, eps * kappa_dot(t)): the base ellipse with an
    /// out-of-plane deformation proportional to its curvature rate. Period 2 pi.
    static ClosedCurve deformed_ellipse(double eps);

    static ClosedCurve fourier(FourierSeries x, FourierSeries y, FourierSeries z,
                               double period);

    double period() const { return period_; }
    const std::string& kind() const { return kind_; }

    /// c(t) and its first three parameter derivatives; t reduced mod T.
    CurveJet eval(double t) const;

    /// t mapped to [0, T).
    double reduce(double t) const;

  private:
    ClosedCurve(double period, std::string kind,
                std::function<CurveJet(double)> eval);
    void validate() const;

    double period_;
    std::string kind_;
    std::function<CurveJet(double)> eval_;
};

/// Frenet frame and scalar invariants at one parameter value.
struct FrenetData {
    Vec3 tangent;
    Vec3 normal;
    Vec3 binormal;
    double curvature;  ///< kappa >= 0
    double torsion;    ///< tau
    double speed;      ///< |c'(t)| > 0
};

/// Frenet apparatus at t for an arbitrary-parameter curve:
/// kappa = |c' ^ c''| / |c'|^3, tau = det(c', c'', c''') / |c' ^ c''|^2.
/// Throws BiRegularityFailure where |c' ^ c''| degenerates.
FrenetData frenet(const ClosedCurve& curve, double t);

/// Same, from an already evaluated jet.
FrenetData frenet(const CurveJet& jet);

/// min over a uniform grid of |c' ^ c''| / |c'|. Positive iff the curve is
/// bi-regular on the grid; a non-positive value is a report, not an error.
double biregularity_margin(const ClosedCurve& curve, int grid_n = 2048);

/// Arc length integral of |c'| over [t0, t1], adaptive to 1e-10 absolute.
double arc_length(const ClosedCurve& curve, double t0, double t1);

}  // namespace canal
