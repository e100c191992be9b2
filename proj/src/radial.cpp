#include "canal/radial.hpp"

#include <cmath>
#include <utility>

#include "canal/ellipse_kappa.hpp"
#include "canal/errors.hpp"

namespace canal {

RadialFunction::RadialFunction(double period, std::string kind,
                               std::function<Jet(double)> eval)
    : period_(period), kind_(std::move(kind)), eval_(std::move(eval)) {
    validate();
}

void RadialFunction::validate() const {
    if (!(period_ > 0.0))
        throw ConstructionError("radial: period must be positive");
    for (int i = 0; i < 2048; ++i) {
        const double t = period_ * static_cast<double>(i) / 2048;
        if (!(eval_(t).r > 0.0))
            throw ConstructionError("radial: r <= 0 on check grid (t=" +
                                    std::to_string(t) + ")");
    }
    const Jet j0 = eval_(0.0);
    const Jet jT = eval_(period_);
    const double d = std::abs(j0.r - jT.r) + std::abs(j0.rdot - jT.rdot) +
                     std::abs(j0.rddot - jT.rddot);
    if (!(d < 1e-12))
        throw ConstructionError("radial: evaluator is not T-periodic");
}

RadialFunction::Jet RadialFunction::eval(double t) const {
    double r = std::fmod(t, period_);
    if (r < 0.0) r += period_;
    return eval_(r);
}

RadialFunction RadialFunction::constant(double value, double period) {
    if (!(value > 0.0))
        throw ConstructionError("radial: constant radius must be positive");
    return RadialFunction(period, "constant",
                          [value](double) { return Jet{value, 0.0, 0.0}; });
}

RadialFunction RadialFunction::modulated(double rho, double mu) {
    auto eval = [rho, mu](double t) {
        const EllipseKappaJet k = ellipse_kappa_jet(t);
        return Jet{rho + mu * k.d1, mu * k.d2, mu * k.d3};
    };
    return RadialFunction(2.0 * M_PI, "family", eval);
}

RadialFunction RadialFunction::fourier(FourierSeries series, double period) {
    if (!(period > 0.0))
        throw ConstructionError("radial: period must be positive");
    const double w = 2.0 * M_PI / period;
    auto eval = [series = std::move(series), w](double t) {
        const Eigen::Vector4d v = series.eval(t, w);
        return Jet{v[0], v[1], v[2]};
    };
    return RadialFunction(period, "fourier", eval);
}

}  // namespace canal
