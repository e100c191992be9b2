#pragma once
#include <cmath>

namespace canal {

/// Curvature of the base ellipse (2cos t, sin t, 0) together with its first
/// four parameter derivatives. kappa(t) = 2 (4 - 3 cos^2 t)^{-3/2}; everything
/// below is written in terms of g = 4 - 3 cos^2 t and its derivatives, which
/// keeps the chain-rule bookkeeping in one place.
struct EllipseKappaJet {
    double value;  ///< kappa
    double d1;     ///< dkappa/dt
    double d2;
    double d3;
    double d4;
};

inline EllipseKappaJet ellipse_kappa_jet(double t) {
    const double c = std::cos(t);
    const double s2 = std::sin(2.0 * t);
    const double c2 = std::cos(2.0 * t);
    const double g = 4.0 - 3.0 * c * c;
    const double g1 = 3.0 * s2;
    const double g2 = 6.0 * c2;
    const double g3 = -12.0 * s2;
    const double g4 = -24.0 * c2;

    const double gm = 1.0 / g;
    const double p25 = std::pow(g, -2.5);
    const double p35 = p25 * gm;
    const double p45 = p35 * gm;
    const double p55 = p45 * gm;

    EllipseKappaJet j;
    j.value = 2.0 * std::pow(g, -1.5);
    j.d1 = -3.0 * g1 * p25;
    j.d2 = -3.0 * g2 * p25 + 7.5 * g1 * g1 * p35;
    j.d3 = -3.0 * g3 * p25 + 22.5 * g1 * g2 * p35 - 26.25 * g1 * g1 * g1 * p45;
    j.d4 = -3.0 * g4 * p25 + (30.0 * g1 * g3 + 22.5 * g2 * g2) * p35 -
           157.5 * g1 * g1 * g2 * p45 + 118.125 * g1 * g1 * g1 * g1 * p55;
    return j;
}

/// Arc-length element of the base ellipse, sqrt(4 - 3 cos^2 t).
inline double ellipse_speed(double t) {
    const double c = std::cos(t);
    return std::sqrt(4.0 - 3.0 * c * c);
}

}  // namespace canal
