#pragma once
#include <functional>
#include <string>

#include "canal/curve.hpp"

namespace canal {

/// Periodic radius r(t) of the sphere family, with analytic t-derivatives.
/// Arc-length derivatives (the r' of the envelope formulas) are formed by the
/// surface, which knows the curve's speed.
class RadialFunction {
  public:
    struct Jet {
        double r;      ///< r(t) > 0
        double rdot;   ///< dr/dt
        double rddot;  ///< d2r/dt2
    };

    static RadialFunction constant(double value, double period);

    /// rho + mu * kappa_dot(t) with the base-ellipse kappa; period 2 pi.
    static RadialFunction modulated(double rho, double mu);

    static RadialFunction fourier(FourierSeries series, double period);

    double period() const { return period_; }
    const std::string& kind() const { return kind_; }

    Jet eval(double t) const;

  private:
    RadialFunction(double period, std::string kind,
                   std::function<Jet(double)> eval);
    void validate() const;

    double period_;
    std::string kind_;
    std::function<Jet(double)> eval_;
};

}  // namespace canal
