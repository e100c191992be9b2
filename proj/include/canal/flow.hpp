#pragma once
#include <vector>

#include "canal/ode.hpp"
#include "canal/surface.hpp"

namespace canal {

/// The minimal-principal-line flow as a scalar ODE on the circle:
/// dphi/dt = W(t, phi) = -s'(t) [tau + (r'/sigma) kappa sin phi],
/// T-periodic in t and 2 pi-periodic in phi.
class FlowField {
  public:
    explicit FlowField(const CanalSurface& surface) : surface_(&surface) {}

    const CanalSurface& surface() const { return *surface_; }
    double period() const { return surface_->period(); }

    double rhs(double t, double phi) const;

  private:
    const CanalSurface* surface_;
};

/// A lifted solution phi(t) (never reduced mod 2 pi) sampled at the accepted
/// integrator steps.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> phi;
    OdeStats stats;
};

/// Integrate the flow from (t0, phi0) to t1 with relative/absolute tolerance
/// tol in [1e-13, 1e-6]. Throws StepSizeUnderflow (with location) on stall.
Trajectory integrate_principal_line(const FlowField& flow, double t0,
                                    double phi0, double t1, double tol = 1e-10);

struct ReturnPoint {
    double phi1;        ///< Phi(T, phi0) reduced to [0, 2 pi)
    double lift_delta;  ///< Phi(T, phi0) - phi0, unreduced
};

/// One full period of the flow starting at angle phi0.
ReturnPoint return_map_point(const FlowField& flow, double phi0,
                             double tol = 1e-10);

/// phi mapped to [0, 2 pi).
double wrap_angle(double phi);

}  // namespace canal
