#pragma once
#include <cmath>
#include <cstddef>

#include "canal/errors.hpp"

namespace canal {

/// Adaptive quadrature built on the Gauss7/Kronrod15 pair with recursive
/// bisection. The Kronrod sum is the estimate; |K15 - G7| drives refinement.
namespace detail {

// Kronrod 15 abscissae on [-1, 1] (positive half) and weights; the Gauss 7
// weights apply to every second node.
inline constexpr double kGK15Nodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kK15Weights[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kG7Weights[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

}  // namespace detail

/// Integrate f over [a, b] to the requested absolute tolerance.
/// Throws QuadratureNonConvergence if the recursion limit is exhausted.
template <class F>
double integrate(const F& f, double a, double b, double abs_tol = 1e-12,
                 int max_depth = 40) {
    struct Panel {
        static void rule(const F& f, double a, double b, double& k15,
                         double& g7) {
            const double h = 0.5 * (b - a);
            const double mid = 0.5 * (a + b);
            const double fc = f(mid);
            k15 = detail::kK15Weights[7] * fc;
            g7 = detail::kG7Weights[3] * fc;
            for (int i = 0; i < 7; ++i) {
                const double dx = h * detail::kGK15Nodes[i];
                const double fsum = f(mid - dx) + f(mid + dx);
                k15 += detail::kK15Weights[i] * fsum;
                if (i % 2 == 1) g7 += detail::kG7Weights[i / 2] * fsum;
            }
            k15 *= h;
            g7 *= h;
        }

        static double recurse(const F& f, double a, double b, double k15,
                              double g7, double tol, int depth) {
            if (std::abs(k15 - g7) <= tol || depth <= 0) {
                if (depth <= 0 && std::abs(k15 - g7) > tol)
                    throw QuadratureNonConvergence(
                        "adaptive quadrature: recursion limit reached");
                return k15;
            }
            const double mid = 0.5 * (a + b);
            double kl, gl, kr, gr;
            rule(f, a, mid, kl, gl);
            rule(f, mid, b, kr, gr);
            return recurse(f, a, mid, kl, gl, 0.5 * tol, depth - 1) +
                   recurse(f, mid, b, kr, gr, 0.5 * tol, depth - 1);
        }
    };

    if (a == b) return 0.0;
    double k15, g7;
    Panel::rule(f, a, b, k15, g7);
    return Panel::recurse(f, a, b, k15, g7, abs_tol, max_depth);
}

}  // namespace canal
