#pragma once
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "canal/errors.hpp"

namespace canal {

struct OdeStats {
    long steps = 0;
    long rejected = 0;
    double tol = 0.0;
};

/// Adaptive Dormand-Prince 5(4) for a scalar ODE y' = f(t, y).
/// `observer(t, y)` is called at the initial point and after every accepted
/// step. Steps whose |dy| reaches pi are rejected so the observer sees a
/// continuous lift. Throws StepSizeUnderflow if the controller stalls.
template <class F, class Obs>
double integrate_ode(const F& f, double t0, double y0, double t1, double tol,
                     OdeStats& stats, Obs&& observer) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5,
                            c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    // y5 - y4 (embedded error) coefficients
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    stats = OdeStats{};
    stats.tol = tol;
    const double span = t1 - t0;
    double t = t0;
    double y = y0;
    observer(t, y);

    double k1 = f(t, y);
    double h = std::min(span, 1e-2 * span);
    const double h_min = std::max(span, 1.0) * 1e-15;

    while (t < t1) {
        h = std::min(h, t1 - t);
        if (h < h_min)
            throw StepSizeUnderflow("ode: step size underflow at t=" +
                                    std::to_string(t));
        const double k2 = f(t + c2 * h, y + h * a21 * k1);
        const double k3 = f(t + c3 * h, y + h * (a31 * k1 + a32 * k2));
        const double k4 = f(t + c4 * h, y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 =
            f(t + c5 * h, y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = f(
            t + h, y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double dy = h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double y_new = y + dy;
        const double k7 = f(t + h, y_new);  // FSAL
        const double err_abs = std::abs(
            h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7));
        const double scale = tol + tol * std::max(std::abs(y), std::abs(y_new));
        const double err = err_abs / scale;

        if (err <= 1.0 && std::abs(dy) < M_PI) {
            t += h;
            y = y_new;
            k1 = k7;
            ++stats.steps;
            observer(t, y);
        } else {
            ++stats.rejected;
        }
        double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        if (std::abs(dy) >= M_PI) factor = std::min(factor, 0.5);
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return y;
}

template <class F>
double integrate_ode(const F& f, double t0, double y0, double t1, double tol,
                     OdeStats& stats) {
    return integrate_ode(f, t0, y0, t1, tol, stats, [](double, double) {});
}

}  // namespace canal
