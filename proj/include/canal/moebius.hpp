#pragma once
#include <optional>
#include <string>
#include <vector>

#include "canal/flow.hpp"

namespace canal {

/// Real fractional-linear map z -> (a z + b)/(c z + d) acting on the circle
/// through z = tan(phi/2), stored with determinant normalized to 1 and trace
/// >= 0 (the two matrix signs act identically). The angle action uses the
/// half-angle form atan2(a sin + b cos, c sin + d cos), which has no pole at
/// phi = pi.
class MoebiusMap {
  public:
    MoebiusMap(double a, double b, double c, double d);

    static MoebiusMap identity();
    /// Rigid rotation phi -> phi + psi.
    static MoebiusMap rotation(double psi);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double trace() const { return a_ + d_; }

    /// Action in the z chart; maps +-inf correctly, returns inf at the pole.
    double apply_z(double z) const;

    /// Action on angles, result in [0, 2 pi).
    double apply_angle(double phi) const;

    /// Displacement apply_angle(phi) - phi wrapped to (-pi, pi].
    double displacement(double phi) const;

    /// dPi/dphi; equals the multiplier at a fixed point.
    double derivative_angle(double phi) const;

    /// d2Pi/dphi2.
    double second_derivative_angle(double phi) const;

    MoebiusMap inverse() const;
    MoebiusMap compose(const MoebiusMap& rhs) const;  // this after rhs

  private:
    double a_, b_, c_, d_;
};

enum class MapClass { identity, elliptic, hyperbolic, parabolic };

std::string to_string(MapClass c);

struct FixedPointInfo {
    double phi;         ///< in [0, 2 pi)
    double multiplier;  ///< dPi/dphi at the fixed point
    enum class Stability { attracting, repelling, semi_stable } stability;
};

struct ReturnMapReport {
    MoebiusMap moebius = MoebiusMap::identity();
    MapClass classification = MapClass::identity;
    /// Real rotation number for identity/elliptic (lift fixes winding and
    /// sign); integer winding for hyperbolic/parabolic.
    std::optional<double> rotation_number;
    std::vector<FixedPointInfo> fixed_points;
    double fit_residual = 0.0;
    double lift_delta = 0.0;       ///< reference lift (phi0 = 0 trajectory)
    bool parabolic_confident = false;
};

struct MoebiusFit {
    MoebiusMap map = MoebiusMap::identity();
    double residual = 0.0;     ///< max chordal error over 8 validation angles
    double lift_delta0 = 0.0;  ///< lift of the phi0 = 0 trajectory
};

/// Interpolate the return map through three trajectories (phi0 = 0, 2pi/3,
/// 4pi/3) and validate on eight Chebyshev-distributed angles. Throws
/// FitFailure if the residual exceeds 100 * tol or the fit degenerates.
MoebiusFit fit_moebius(const FlowField& flow, double tol = 1e-10);

/// Classify by the normalized trace with guard band delta around |tr| = 2:
/// elliptic below, hyperbolic above (fixed points from the z-chart quadratic),
/// parabolic candidate inside the band (Newton-refined on the displacement,
/// confidence recorded), identity when the matrix itself is within delta of I.
ReturnMapReport classify_return_map(const MoebiusMap& map, double lift_reference,
                                    double delta = 1e-6);

/// Fit, classify, then verify every fixed point by direct integration
/// (|Pi(phi*) - phi*| < 10 tol) and cross-check multipliers against a central
/// finite difference of the integrated map (1e-4 relative). Throws FitFailure
/// if verification fails.
ReturnMapReport find_principal_cycles(const FlowField& flow, double tol = 1e-10);

}  // namespace canal
